#include "linsel/rightinv.hpp"

namespace linsel {

namespace {

std::size_t rows_of(const RatMat& t) { return t.size(); }
std::size_t cols_of(const RatMat& t) { return t.empty() ? 0 : t[0].size(); }

void require_surjective(const RatMat& t) {
    if (t.empty() || t[0].empty()) throw NotSurjective("empty matrix");
    for (const auto& row : t)
        if (row.size() != t[0].size()) throw MixedDimensions("ragged matrix");
    if (rank(t) != rows_of(t)) throw NotSurjective("matrix does not have full row rank");
}

// Column program over split variables u, v >= 0 with x = u - v and
// sum(u + v) <= bound (ignored when bound is absent).
LinearProgram phi_program(const RatMat& t, const RatVec& target,
                          const std::optional<Rat>& bound) {
    const std::size_t m = rows_of(t), n = cols_of(t);
    LinearProgram lp;
    lp.num_vars = 2 * n;
    for (std::size_t j = 0; j < lp.num_vars; ++j) lp.nonneg.push_back(j);
    for (std::size_t i = 0; i < m; ++i) {
        RatVec row(2 * n);
        for (std::size_t j = 0; j < n; ++j) {
            row[j] = t[i][j];
            row[n + j] = -t[i][j];
        }
        lp.equalities.push_back({std::move(row), target[i]});
    }
    if (bound) lp.inequalities.push_back({RatVec(2 * n, Rat(-1)), -*bound});
    return lp;
}

RatVec split_to_point(const RatVec& w, std::size_t n) {
    RatVec x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = w[j] - w[n + j];
    return x;
}

}  // namespace

Rat l1_norm(const RatVec& x) {
    Rat out(0);
    for (const auto& v : x) out += abs(v);
    return out;
}

Rat min_inverse_constant(const RatMat& t) {
    require_surjective(t);
    const std::size_t m = rows_of(t), n = cols_of(t);
    Rat best(0);
    for (std::size_t i = 0; i < m; ++i) {
        RatVec e = zero_vec(m);
        e[i] = 1;
        LinearProgram lp = phi_program(t, e, std::nullopt);
        lp.objective = RatVec(2 * n, Rat(1));
        auto res = optimize(lp, Sense::Minimize);
        if (res.status != LpStatus::Optimal)
            throw NotSurjective("min_inverse_constant: unit vector has no preimage");
        if (res.value > best) best = res.value;
    }
    return best;
}

RightInverse right_inverse(const RightInverseProblem& p,
                           const std::optional<TomoCoords>& theta) {
    require_surjective(p.matrix);
    const Rat cmin = min_inverse_constant(p.matrix);
    if (p.bound < cmin)
        throw BoundTooSmall("right_inverse: bound below the minimal inverse constant",
                            cmin);
    const std::size_t m = rows_of(p.matrix), n = cols_of(p.matrix);
    TomoCoords th;
    if (theta) {
        if (theta->thetas.size() != n)
            throw ArityMismatch("right_inverse: one theta per coordinate");
        th = *theta;
    } else {
        th.thetas.assign(n, Rat(0));
    }

    RatMat columns;  // column-major for construction
    for (std::size_t i = 0; i < m; ++i) {
        RatVec e = zero_vec(m);
        e[i] = 1;
        LinearProgram lp = phi_program(p.matrix, e, p.bound);
        // Pin the coordinates one by one at the theta-level of their range.
        for (std::size_t c = 0; c < n; ++c) {
            RatVec obj = zero_vec(lp.num_vars);
            obj[c] = 1;
            obj[n + c] = -1;
            lp.objective = obj;
            Rat level;
            if (th.thetas[c] == 0) {
                auto lo = optimize(lp, Sense::Minimize);
                if (lo.status != LpStatus::Optimal)
                    throw BoundTooSmall("right_inverse: empty column set", cmin);
                level = lo.value;
            } else if (th.thetas[c] == 1) {
                auto hi = optimize(lp, Sense::Maximize);
                if (hi.status != LpStatus::Optimal)
                    throw BoundTooSmall("right_inverse: empty column set", cmin);
                level = hi.value;
            } else {
                auto lo = optimize(lp, Sense::Minimize);
                auto hi = optimize(lp, Sense::Maximize);
                if (lo.status != LpStatus::Optimal || hi.status != LpStatus::Optimal)
                    throw BoundTooSmall("right_inverse: empty column set", cmin);
                level = (Rat(1) - th.thetas[c]) * lo.value + th.thetas[c] * hi.value;
            }
            RatVec pin = zero_vec(lp.num_vars);
            pin[c] = 1;
            pin[n + c] = -1;
            lp.equalities.push_back({std::move(pin), level});
        }
        auto fin = solve_feasibility(lp);
        if (fin.status != LpStatus::Feasible)
            throw std::logic_error("right_inverse: pinned system infeasible");
        columns.push_back(split_to_point(fin.point, n));
    }

    RightInverse out;
    out.matrix.assign(n, RatVec(m));
    out.norm = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const Rat cn = l1_norm(columns[i]);
        if (cn > out.norm) out.norm = cn;
        for (std::size_t j = 0; j < n; ++j) out.matrix[j][i] = columns[i][j];
    }
    return out;
}

namespace {

// Decomposition program for the preservation criterion: variables are split
// coordinates of x_j for every active index j, constrained by T x_j = e_j,
// |x_j|_1 <= C and sum_j w_j x_j = z.
LinearProgram through_program(const RatMat& t, const Rat& bound, const RatVec& weights,
                              const std::vector<std::size_t>& active, const RatVec& z) {
    const std::size_t m = rows_of(t), n = cols_of(t);
    LinearProgram lp;
    lp.num_vars = 2 * n * active.size();
    for (std::size_t v = 0; v < lp.num_vars; ++v) lp.nonneg.push_back(v);
    auto u_var = [&](std::size_t slot, std::size_t j) { return slot * 2 * n + j; };
    auto v_var = [&](std::size_t slot, std::size_t j) { return slot * 2 * n + n + j; };

    for (std::size_t s = 0; s < active.size(); ++s) {
        for (std::size_t i = 0; i < m; ++i) {
            RatVec row = zero_vec(lp.num_vars);
            for (std::size_t j = 0; j < n; ++j) {
                row[u_var(s, j)] = t[i][j];
                row[v_var(s, j)] = -t[i][j];
            }
            const Rat rhs = (i == active[s]) ? Rat(1) : Rat(0);
            lp.equalities.push_back({std::move(row), rhs});
        }
        RatVec norm_row = zero_vec(lp.num_vars);
        for (std::size_t j = 0; j < 2 * n; ++j) norm_row[s * 2 * n + j] = -1;
        lp.inequalities.push_back({std::move(norm_row), -bound});
    }
    for (std::size_t j = 0; j < n; ++j) {
        RatVec row = zero_vec(lp.num_vars);
        for (std::size_t s = 0; s < active.size(); ++s) {
            row[u_var(s, j)] = weights[active[s]];
            row[v_var(s, j)] = -weights[active[s]];
        }
        lp.equalities.push_back({std::move(row), z[j]});
    }
    return lp;
}

}  // namespace

ThroughResult right_inverse_through(const RightInverseProblem& p) {
    require_surjective(p.matrix);
    if (!p.preserve) throw EmptyInput("right_inverse_through: no point to preserve");
    const Rat cmin = min_inverse_constant(p.matrix);
    if (p.bound < cmin)
        throw BoundTooSmall("right_inverse_through: bound below the minimal constant",
                            cmin);
    const RatVec& z = *p.preserve;
    const std::size_t m = rows_of(p.matrix), n = cols_of(p.matrix);
    if (z.size() != n) throw MixedDimensions("right_inverse_through: z dimension");
    const RatVec tz = mat_vec(p.matrix, z);
    for (const auto& w : tz)
        if (w < 0) throw NegativeImage("right_inverse_through: T z has a negative entry");

    ThroughResult out;
    // Norm obstruction: any M with |M|_{l1->l1} <= C preserving z would give
    // |z|_1 = |M (T z)|_1 <= C |T z|_1.
    out.z_norm = l1_norm(z);
    out.image_bound = p.bound * l1_norm(tz);
    if (out.z_norm > out.image_bound) {
        out.possible = false;
        out.certificate = ThroughCertificate::NormObstruction;
        return out;
    }

    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < m; ++i)
        if (tz[i] != 0) active.push_back(i);

    if (active.empty()) {
        // T z = 0: preservation forces z = 0, which the norm test already
        // settled unless z = 0; any right inverse works.
        out.possible = is_zero(z);
        if (!out.possible) {
            out.certificate = ThroughCertificate::NormObstruction;
            return out;
        }
        out.inverse = right_inverse(p);
        return out;
    }

    const LinearProgram lp = through_program(p.matrix, p.bound, tz, active, z);
    auto res = solve_feasibility(lp);
    if (res.status != LpStatus::Feasible) {
        out.possible = false;
        out.certificate = ThroughCertificate::Infeasibility;
        out.farkas = *res.certificate;
        return out;
    }

    // Build M: witness columns for the active indices, default theta-points
    // for the rest.
    RightInverseProblem plain{p.matrix, p.bound, std::nullopt};
    RightInverse inv = right_inverse(plain);
    for (std::size_t s = 0; s < active.size(); ++s) {
        RatVec w(res.point.begin() + static_cast<std::ptrdiff_t>(s * 2 * n),
                 res.point.begin() + static_cast<std::ptrdiff_t>((s + 1) * 2 * n));
        const RatVec col = split_to_point(w, n);
        for (std::size_t j = 0; j < n; ++j) inv.matrix[j][active[s]] = col[j];
    }
    inv.norm = 0;
    for (std::size_t i = 0; i < m; ++i) {
        RatVec col(n);
        for (std::size_t j = 0; j < n; ++j) col[j] = inv.matrix[j][i];
        const Rat cn = l1_norm(col);
        if (cn > inv.norm) inv.norm = cn;
    }
    out.possible = true;
    out.inverse = std::move(inv);
    return out;
}

bool verify_through_certificate(const RightInverseProblem& p,
                                const InfeasibilityCertificate& cert) {
    if (!p.preserve) return false;
    const RatVec tz = mat_vec(p.matrix, *p.preserve);
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < tz.size(); ++i)
        if (tz[i] != 0) active.push_back(i);
    const LinearProgram lp = through_program(p.matrix, p.bound, tz, active, *p.preserve);
    return certificate_refutes(lp, cert);
}

RatMat extend_linear(const Selection& phi, std::size_t space_dim) {
    const auto* bt = std::get_if<BasisTable>(&phi.impl);
    if (!bt) throw NotGenerating("extend_linear: expects a basis-table selection");
    const Cone& c = bt->domain;
    if (c.dim != space_dim || c.generators.size() != space_dim || !c.basis_flag)
        throw NotGenerating("extend_linear: cone does not generate the space");
    RatMat g(space_dim, RatVec(space_dim));
    for (std::size_t col = 0; col < space_dim; ++col)
        for (std::size_t row = 0; row < space_dim; ++row)
            g[row][col] = c.generators[col][row];
    auto ginv = invert(g);
    if (!ginv) throw NotGenerating("extend_linear: generators are dependent");
    const std::size_t vdim = bt->values.empty() ? 0 : bt->values[0].size();
    RatMat y(vdim, RatVec(space_dim));
    for (std::size_t col = 0; col < space_dim; ++col)
        for (std::size_t row = 0; row < vdim; ++row) y[row][col] = bt->values[col][row];
    return mat_mul(y, *ginv);
}

}  // namespace linsel
