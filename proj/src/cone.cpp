#include "linsel/cone.hpp"

#include <algorithm>
#include <set>

namespace linsel {

namespace {

RatVec ray_canonical(const RatVec& g) {
    for (const auto& v : g) {
        if (v != 0) return vec_scale(Rat(1) / abs(v), g);
    }
    throw EmptyInput("cone generator must be nonzero");
}

bool in_cone_of(const std::vector<RatVec>& gens, const RatVec& x, std::size_t skip) {
    std::vector<const RatVec*> g;
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (i != skip) g.push_back(&gens[i]);
    if (g.empty()) return is_zero(x);
    LinearProgram lp;
    lp.num_vars = g.size();
    for (std::size_t j = 0; j < g.size(); ++j) lp.nonneg.push_back(j);
    for (std::size_t c = 0; c < x.size(); ++c) {
        RatVec row(g.size());
        for (std::size_t j = 0; j < g.size(); ++j) row[j] = (*g[j])[c];
        lp.equalities.push_back({std::move(row), x[c]});
    }
    return solve_feasibility(lp).status == LpStatus::Feasible;
}

}  // namespace

Cone make_cone(const std::vector<RatVec>& generators, std::size_t dim) {
    if (generators.empty()) throw EmptyInput("make_cone: no generators");
    std::vector<RatVec> rays;
    for (const auto& g : generators) {
        if (g.size() != dim) throw MixedDimensions("make_cone: generator dimension mismatch");
        rays.push_back(ray_canonical(g));
    }
    std::sort(rays.begin(), rays.end(), lex_less);
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
    for (std::size_t i = 0; i < rays.size();) {
        if (in_cone_of(rays, rays[i], i))
            rays.erase(rays.begin() + static_cast<std::ptrdiff_t>(i));
        else
            ++i;
    }
    Cone c;
    c.dim = dim;
    c.generators = std::move(rays);
    c.basis_flag = rank(c.generators) == c.generators.size();
    return c;
}

bool membership(const Cone& c, const RatVec& x) {
    if (x.size() != c.dim) throw MixedDimensions("membership: dimension mismatch");
    return in_cone_of(c.generators, x, static_cast<std::size_t>(-1));
}

bool is_pointed(const Cone& c) {
    LinearProgram lp;
    lp.num_vars = c.generators.size();
    for (std::size_t j = 0; j < lp.num_vars; ++j) lp.nonneg.push_back(j);
    for (std::size_t d = 0; d < c.dim; ++d) {
        RatVec row(lp.num_vars);
        for (std::size_t j = 0; j < lp.num_vars; ++j) row[j] = c.generators[j][d];
        lp.equalities.push_back({std::move(row), Rat(0)});
    }
    lp.equalities.push_back({RatVec(lp.num_vars, Rat(1)), Rat(1)});
    return solve_feasibility(lp).status == LpStatus::Infeasible;
}

ConeCoords coords(const Cone& c, const RatVec& x) {
    if (!c.basis_flag) throw NoConeBasis("coords: cone has no cone-basis");
    if (x.size() != c.dim) throw MixedDimensions("coords: dimension mismatch");
    RatMat a(c.dim, RatVec(c.generators.size()));
    for (std::size_t d = 0; d < c.dim; ++d)
        for (std::size_t j = 0; j < c.generators.size(); ++j) a[d][j] = c.generators[j][d];
    auto solved = solve_linear(a, x);
    if (!solved.solution) throw NotInCone("coords: point outside the span");
    for (const auto& v : *solved.solution)
        if (v < 0) throw NotInCone("coords: point outside the cone");
    return ConeCoords{*solved.solution};
}

namespace {

LinearProgram riesz_program(const Cone& c, const std::vector<RatVec>& xs,
                            const std::vector<RatVec>& ys) {
    const std::size_t m = xs.size(), n = ys.size(), r = c.generators.size(), d = c.dim;
    // beta[j][k][t]: weight of generator t inside z_jk
    LinearProgram lp;
    lp.num_vars = m * n * r;
    for (std::size_t v = 0; v < lp.num_vars; ++v) lp.nonneg.push_back(v);
    auto var = [&](std::size_t j, std::size_t k, std::size_t t) {
        return (j * n + k) * r + t;
    };
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t cdim = 0; cdim < d; ++cdim) {
            RatVec row = zero_vec(lp.num_vars);
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t t = 0; t < r; ++t)
                    row[var(j, k, t)] = c.generators[t][cdim];
            lp.equalities.push_back({std::move(row), xs[j][cdim]});
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t cdim = 0; cdim < d; ++cdim) {
            RatVec row = zero_vec(lp.num_vars);
            for (std::size_t j = 0; j < m; ++j)
                for (std::size_t t = 0; t < r; ++t)
                    row[var(j, k, t)] = c.generators[t][cdim];
            lp.equalities.push_back({std::move(row), ys[k][cdim]});
        }
    }
    return lp;
}

void riesz_validate(const Cone& c, const std::vector<RatVec>& xs,
                    const std::vector<RatVec>& ys) {
    if (xs.empty() || ys.empty()) throw EmptyInput("riesz_interpolate: empty decomposition");
    RatVec sx = zero_vec(c.dim), sy = zero_vec(c.dim);
    for (const auto& x : xs) {
        if (!membership(c, x)) throw NotInCone("riesz_interpolate: x_j outside the cone");
        sx = vec_add(sx, x);
    }
    for (const auto& y : ys) {
        if (!membership(c, y)) throw NotInCone("riesz_interpolate: y_k outside the cone");
        sy = vec_add(sy, y);
    }
    if (sx != sy) throw SumMismatch("riesz_interpolate: decompositions sum differently");
}

}  // namespace

RieszResult riesz_interpolate(const Cone& c, const std::vector<RatVec>& xs,
                              const std::vector<RatVec>& ys) {
    riesz_validate(c, xs, ys);
    RieszResult out;
    const std::size_t m = xs.size(), n = ys.size();

    if (c.basis_flag) {
        RatVec z = zero_vec(c.dim);
        for (const auto& x : xs) z = vec_add(z, x);
        const RatVec az = coords(c, z).alpha;
        std::vector<RatVec> ax, ay;
        for (const auto& x : xs) ax.push_back(coords(c, x).alpha);
        for (const auto& y : ys) ay.push_back(coords(c, y).alpha);
        out.feasible = true;
        out.grid.assign(m, std::vector<RatVec>(n));
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                RatVec z_jk = zero_vec(c.dim);
                for (std::size_t b = 0; b < c.generators.size(); ++b) {
                    if (az[b] == 0) continue;  // then alpha_b(x_j) = 0 as well: 0/0 = 0
                    const Rat w = ax[j][b] * ay[k][b] / az[b];
                    if (w != 0) z_jk = vec_add(z_jk, vec_scale(w, c.generators[b]));
                }
                out.grid[j][k] = std::move(z_jk);
            }
        }
        return out;
    }

    const LinearProgram lp = riesz_program(c, xs, ys);
    auto res = solve_feasibility(lp);
    if (res.status == LpStatus::Infeasible) {
        out.feasible = false;
        out.certificate = res.certificate;
        return out;
    }
    out.feasible = true;
    out.grid.assign(m, std::vector<RatVec>(n));
    const std::size_t r = c.generators.size();
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            RatVec z_jk = zero_vec(c.dim);
            for (std::size_t t = 0; t < r; ++t) {
                const Rat& w = res.point[(j * n + k) * r + t];
                if (w != 0) z_jk = vec_add(z_jk, vec_scale(w, c.generators[t]));
            }
            out.grid[j][k] = std::move(z_jk);
        }
    }
    return out;
}

bool verify_riesz_certificate(const Cone& c, const std::vector<RatVec>& xs,
                              const std::vector<RatVec>& ys,
                              const InfeasibilityCertificate& cert) {
    return certificate_refutes(riesz_program(c, xs, ys), cert);
}

bool has_rdp(const Cone& c) {
    if (!is_pointed(c)) throw NotPointed("has_rdp: cone contains a line");
    return c.basis_flag;
}

HRep cone_hrep(const Cone& c) {
    HRep h;
    h.dim = c.dim;
    RatMat gens = c.generators;
    // Span equalities
    {
        auto solved = solve_linear(gens, zero_vec(gens.size()));
        for (const auto& n : solved.kernel) h.equalities.push_back({n, Rat(0)});
    }
    const std::size_t r = rank(gens);
    if (r == 0) return h;

    // Work inside the span via pivot coordinates.
    RatMat red = gens;
    std::vector<std::size_t> piv;
    {
        // pivot columns of the generator matrix
        RatMat a = gens;
        const std::size_t rows = a.size(), cols = c.dim;
        std::size_t rr = 0;
        for (std::size_t col = 0; col < cols && rr < rows; ++col) {
            std::size_t p = rr;
            while (p < rows && a[p][col] == 0) ++p;
            if (p == rows) continue;
            std::swap(a[p], a[rr]);
            const Rat inv = Rat(1) / a[rr][col];
            for (std::size_t j = col; j < cols; ++j) a[rr][j] *= inv;
            for (std::size_t i = 0; i < rows; ++i) {
                if (i == rr || a[i][col] == 0) continue;
                const Rat f = a[i][col];
                for (std::size_t j = col; j < cols; ++j) a[i][j] -= f * a[rr][j];
            }
            piv.push_back(col);
            ++rr;
        }
    }
    std::vector<RatVec> proj(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
        proj[i].reserve(r);
        for (auto col : piv) proj[i].push_back(gens[i][col]);
    }

    std::set<RatVec> seen;
    const std::size_t subset_size = r - 1;
    std::vector<std::size_t> comb(subset_size);
    for (std::size_t i = 0; i < subset_size; ++i) comb[i] = i;
    while (true) {
        RatMat sub;
        for (auto i : comb) sub.push_back(proj[i]);
        if (sub.empty()) sub.push_back(zero_vec(r));
        auto solved = solve_linear(sub, zero_vec(sub.size()));
        if (solved.kernel.size() == 1) {
            RatVec n = solved.kernel[0];
            bool all_ge = true, all_le = true;
            for (const auto& t : proj) {
                const Rat v = dot(n, t);
                if (v < 0) all_ge = false;
                if (v > 0) all_le = false;
            }
            if (all_ge || all_le) {
                if (all_le) n = vec_scale(Rat(-1), n);
                Rat lead(0);
                for (const auto& v : n)
                    if (v != 0) {
                        lead = abs(v);
                        break;
                    }
                if (lead != 0) {
                    n = vec_scale(Rat(1) / lead, n);
                    if (seen.insert(n).second) {
                        RatVec g = zero_vec(c.dim);
                        for (std::size_t i = 0; i < r; ++i) g[piv[i]] = n[i];
                        h.inequalities.push_back({std::move(g), Rat(0)});
                    }
                }
            }
        }
        if (subset_size == 0) break;
        std::size_t i = subset_size;
        while (i > 0 && comb[i - 1] == proj.size() - subset_size + i - 1) --i;
        if (i == 0) break;
        ++comb[i - 1];
        for (std::size_t j = i; j < subset_size; ++j) comb[j] = comb[j - 1] + 1;
    }
    return h;
}

Polytope order_interval(const Cone& c, const RatVec& x) {
    if (c.dim > 4) throw DimensionBudget("order_interval: dimension budget is 4");
    if (!is_pointed(c)) throw NotPointed("order_interval: cone contains a line");
    if (!membership(c, x)) throw NotInCone("order_interval: x outside the cone");

    const HRep hc = cone_hrep(c);
    HRep h;
    h.dim = c.dim;
    h.equalities = hc.equalities;  // y in span; x - y in span follows
    for (const auto& [g, zero] : hc.inequalities) {
        h.inequalities.push_back({g, Rat(0)});                       // g.y >= 0
        h.inequalities.push_back({vec_scale(Rat(-1), g), -dot(g, x)});  // g.(x-y) >= 0
    }
    return vertices_of_hrep(h);
}

Cone Suspension::cone() const {
    std::vector<RatVec> gens;
    for (const auto& v : base.vertices) {
        RatVec g;
        g.reserve(ambient_dim);
        g.push_back(Rat(1));
        g.insert(g.end(), v.begin(), v.end());
        gens.push_back(std::move(g));
    }
    return make_cone(gens, ambient_dim);
}

Suspension suspend(const Polytope& k) { return Suspension{k, k.dim + 1}; }

BaseResult base_of(const Cone& c) {
    LinearProgram lp;
    lp.num_vars = c.dim;
    RatVec objective = zero_vec(c.dim);
    for (const auto& g : c.generators) {
        lp.inequalities.push_back({g, Rat(1)});
        objective = vec_add(objective, g);
    }
    lp.objective = objective;
    auto res = optimize(lp, Sense::Minimize);
    if (res.status != LpStatus::Optimal)
        throw NoBase("base_of: no functional is strictly positive on the generators");
    const Functional g{res.point};
    std::vector<RatVec> verts;
    for (const auto& gen : c.generators) verts.push_back(vec_scale(Rat(1) / g(gen), gen));
    return BaseResult{canonicalize(verts), g};
}

}  // namespace linsel
