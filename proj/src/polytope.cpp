#include "linsel/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace linsel {

namespace {

void check_dim(const RatVec& p, std::size_t dim, const char* op) {
    if (p.size() != dim) throw MixedDimensions(std::string(op) + ": point dimension mismatch");
}

std::vector<RatVec> dedupe_sorted(std::vector<RatVec> pts) {
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

// Direction matrix of a point set relative to its first element.
RatMat directions(const std::vector<RatVec>& pts) {
    RatMat d;
    for (std::size_t i = 1; i < pts.size(); ++i) d.push_back(vec_sub(pts[i], pts[0]));
    return d;
}

// Pivot columns of the row space; restriction to these coordinates is
// injective on the affine hull.
std::vector<std::size_t> pivot_columns(RatMat a) {
    std::vector<std::size_t> pivots;
    if (a.empty()) return pivots;
    const std::size_t rows = a.size(), cols = a[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        const Rat inv = Rat(1) / a[r][c];
        for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const Rat f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

Rat cross(const RatVec& o, const RatVec& a, const RatVec& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Exact 2D convex hull, strictly convex turns only (monotone chain).
std::vector<std::size_t> hull_2d(const std::vector<RatVec>& pts) {
    std::vector<std::size_t> idx(pts.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return lex_less(pts[a], pts[b]); });
    std::vector<std::size_t> h;
    auto build = [&](auto begin, auto end) {
        const std::size_t base = h.size();
        for (auto it = begin; it != end; ++it) {
            while (h.size() >= base + 2 &&
                   cross(pts[h[h.size() - 2]], pts[h[h.size() - 1]], pts[*it]) <= 0)
                h.pop_back();
            h.push_back(*it);
        }
        h.pop_back();
    };
    if (idx.size() < 3) return idx;
    build(idx.begin(), idx.end());
    build(idx.rbegin(), idx.rend());
    return h;
}

}  // namespace

bool in_hull(const std::vector<RatVec>& points, const RatVec& p, std::size_t skip) {
    std::vector<const RatVec*> gen;
    for (std::size_t i = 0; i < points.size(); ++i)
        if (i != skip) gen.push_back(&points[i]);
    if (gen.empty()) return false;
    const std::size_t d = p.size();

    LinearProgram lp;
    lp.num_vars = gen.size();
    for (std::size_t j = 0; j < gen.size(); ++j) lp.nonneg.push_back(j);
    for (std::size_t c = 0; c < d; ++c) {
        RatVec row(gen.size());
        for (std::size_t j = 0; j < gen.size(); ++j) row[j] = (*gen[j])[c];
        lp.equalities.push_back({std::move(row), p[c]});
    }
    lp.equalities.push_back({RatVec(gen.size(), Rat(1)), Rat(1)});
    return solve_feasibility(lp).status == LpStatus::Feasible;
}

Polytope canonicalize(const std::vector<RatVec>& points) {
    if (points.empty()) throw EmptyInput("canonicalize: no points");
    const std::size_t dim = points[0].size();
    if (dim == 0) throw EmptyInput("canonicalize: zero-dimensional points");
    for (const auto& p : points) check_dim(p, dim, "canonicalize");

    std::vector<RatVec> pts = dedupe_sorted(points);
    Polytope out;
    out.dim = dim;
    if (pts.size() == 1) {
        out.vertices = pts;
        return out;
    }

    const RatMat dirs = directions(pts);
    const std::size_t adim = rank(dirs);
    if (adim == 1) {
        // A segment: the lexicographic extremes are the endpoints.
        out.vertices = {pts.front(), pts.back()};
        return out;
    }
    if (adim == 2) {
        const auto piv = pivot_columns(dirs);
        std::vector<RatVec> proj(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i)
            proj[i] = {pts[i][piv[0]], pts[i][piv[1]]};
        std::vector<RatVec> kept;
        for (auto i : hull_2d(proj)) kept.push_back(pts[i]);
        out.vertices = dedupe_sorted(kept);
        return out;
    }

    std::vector<RatVec> alive = pts;
    for (std::size_t i = 0; i < alive.size();) {
        if (in_hull(alive, alive[i], i))
            alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(i));
        else
            ++i;
    }
    out.vertices = alive;  // already lex-sorted
    return out;
}

SupportInterval support(const Polytope& k, const Functional& f) {
    check_dim(f.coeffs, k.dim, "support");
    SupportInterval s{f(k.vertices[0]), f(k.vertices[0])};
    for (const auto& v : k.vertices) {
        const Rat value = f(v);
        if (value < s.low) s.low = value;
        if (value > s.high) s.high = value;
    }
    return s;
}

Polytope section(const Polytope& k, const Functional& f, const Rat& theta) {
    if (theta < 0 || theta > 1) throw PointOutside("section: theta outside [0,1]");
    const SupportInterval s = support(k, f);
    if (s.degenerate()) return k;
    const Rat level = (Rat(1) - theta) * s.low + theta * s.high;

    std::vector<RatVec> candidates;
    std::vector<Rat> values(k.vertices.size());
    for (std::size_t i = 0; i < k.vertices.size(); ++i) {
        values[i] = f(k.vertices[i]);
        if (values[i] == level) candidates.push_back(k.vertices[i]);
    }
    for (std::size_t i = 0; i < k.vertices.size(); ++i) {
        for (std::size_t j = i + 1; j < k.vertices.size(); ++j) {
            const Rat lo = values[i] < values[j] ? values[i] : values[j];
            const Rat hi = values[i] < values[j] ? values[j] : values[i];
            if (!(lo < level && level < hi)) continue;
            const Rat t = (level - values[i]) / (values[j] - values[i]);
            candidates.push_back(
                vec_add(k.vertices[i], vec_scale(t, vec_sub(k.vertices[j], k.vertices[i]))));
        }
    }
    return canonicalize(candidates);
}

Polytope minkowski_sum(const Polytope& a, const Polytope& b) {
    if (a.dim != b.dim) throw MixedDimensions("minkowski_sum: dimension mismatch");
    std::vector<RatVec> sums;
    sums.reserve(a.vertices.size() * b.vertices.size());
    for (const auto& u : a.vertices)
        for (const auto& v : b.vertices) sums.push_back(vec_add(u, v));
    return canonicalize(sums);
}

Polytope scale(const Polytope& a, const Rat& lambda) {
    if (lambda <= 0) throw NonpositiveScalar("scale: lambda must be positive");
    std::vector<RatVec> pts;
    pts.reserve(a.vertices.size());
    for (const auto& v : a.vertices) pts.push_back(vec_scale(lambda, v));
    std::sort(pts.begin(), pts.end(), lex_less);
    Polytope out;
    out.dim = a.dim;
    out.vertices = std::move(pts);
    return out;
}

bool contains(const Polytope& k, const RatVec& p) {
    check_dim(p, k.dim, "contains");
    return in_hull(k.vertices, p);
}

std::size_t affine_dim(const Polytope& k) { return rank(directions(k.vertices)); }

bool is_simplex(const Polytope& k) { return k.vertices.size() == affine_dim(k) + 1; }

RatVec barycentric_coords(const Polytope& simplex, const RatVec& x) {
    check_dim(x, simplex.dim, "barycentric_coords");
    RatMat a(simplex.dim + 1, RatVec(simplex.vertices.size()));
    RatVec b(simplex.dim + 1);
    for (std::size_t c = 0; c < simplex.dim; ++c) {
        for (std::size_t j = 0; j < simplex.vertices.size(); ++j)
            a[c][j] = simplex.vertices[j][c];
        b[c] = x[c];
    }
    for (std::size_t j = 0; j < simplex.vertices.size(); ++j) a[simplex.dim][j] = 1;
    b[simplex.dim] = 1;
    auto solved = solve_linear(a, b);
    if (!solved.solution || !solved.kernel.empty())
        throw PointOutside("barycentric_coords: not a simplex representation");
    for (const auto& l : *solved.solution)
        if (l < 0) throw PointOutside("barycentric_coords: point outside simplex");
    return *solved.solution;
}

Rat concave_envelope_eval(const Polytope& k, const std::vector<Rat>& vertex_values,
                          const RatVec& x) {
    if (vertex_values.size() != k.vertices.size())
        throw ArityMismatch("concave_envelope_eval: one value per canonical vertex required");
    check_dim(x, k.dim, "concave_envelope_eval");

    LinearProgram lp;
    lp.num_vars = k.vertices.size();
    for (std::size_t j = 0; j < lp.num_vars; ++j) lp.nonneg.push_back(j);
    lp.objective = RatVec(vertex_values);
    for (std::size_t c = 0; c < k.dim; ++c) {
        RatVec row(lp.num_vars);
        for (std::size_t j = 0; j < lp.num_vars; ++j) row[j] = k.vertices[j][c];
        lp.equalities.push_back({std::move(row), x[c]});
    }
    lp.equalities.push_back({RatVec(lp.num_vars, Rat(1)), Rat(1)});
    auto res = optimize(lp, Sense::Maximize);
    if (res.status != LpStatus::Optimal)
        throw PointOutside("concave_envelope_eval: point outside polytope");
    return res.value;
}

HRep to_hrep(const Polytope& k) {
    HRep h;
    h.dim = k.dim;
    const RatMat dirs = directions(k.vertices);
    // Affine-hull equalities from the kernel of the direction matrix.
    {
        RatMat d = dirs.empty() ? RatMat{zero_vec(k.dim)} : dirs;
        auto solved = solve_linear(d, zero_vec(d.size()));
        for (const auto& n : solved.kernel)
            h.equalities.push_back({n, dot(n, k.vertices[0])});
    }
    const std::size_t r = rank(dirs);
    if (r == 0) return h;

    const auto piv = pivot_columns(dirs);
    std::vector<RatVec> proj(k.vertices.size());
    for (std::size_t i = 0; i < k.vertices.size(); ++i) {
        proj[i].reserve(r);
        for (auto c : piv) proj[i].push_back(k.vertices[i][c]);
    }

    std::set<std::pair<RatVec, Rat>> seen;
    // Iterate r-subsets via combination stepping.
    std::vector<std::size_t> comb(r);
    for (std::size_t i = 0; i < r; ++i) comb[i] = i;
    while (true) {
        // Hyperplane through proj[comb]: normal = kernel of the r-1 directions.
        RatMat sub_dirs;
        for (std::size_t i = 1; i < r; ++i)
            sub_dirs.push_back(vec_sub(proj[comb[i]], proj[comb[0]]));
        if (sub_dirs.empty()) sub_dirs.push_back(zero_vec(r));
        auto solved = solve_linear(sub_dirs, zero_vec(sub_dirs.size()));
        if (solved.kernel.size() == 1) {
            RatVec n = solved.kernel[0];
            Rat c = dot(n, proj[comb[0]]);
            bool all_ge = true, all_le = true;
            for (const auto& t : proj) {
                const Rat v = dot(n, t);
                if (v < c) all_ge = false;
                if (v > c) all_le = false;
            }
            if (all_ge || all_le) {
                if (all_le) {
                    n = vec_scale(Rat(-1), n);
                    c = -c;
                }
                // Normalize for dedupe: first nonzero of n scaled to +-1.
                Rat lead(0);
                for (const auto& v : n)
                    if (v != 0) {
                        lead = abs(v);
                        break;
                    }
                n = vec_scale(Rat(1) / lead, n);
                c /= lead;
                if (seen.insert({n, c}).second) {
                    RatVec g = zero_vec(k.dim);
                    for (std::size_t i = 0; i < r; ++i) g[piv[i]] = n[i];
                    h.inequalities.push_back({std::move(g), c});
                }
            }
        }
        // next combination
        std::size_t i = r;
        while (i > 0 && comb[i - 1] == proj.size() - r + i - 1) --i;
        if (i == 0) break;
        ++comb[i - 1];
        for (std::size_t j = i; j < r; ++j) comb[j] = comb[j - 1] + 1;
    }
    return h;
}

Polytope vertices_of_hrep(const HRep& h) {
    // Reduce with the equalities: x = p + K u.
    RatMat eq_a;
    RatVec eq_b;
    for (const auto& [row, bound] : h.equalities) {
        eq_a.push_back(row);
        eq_b.push_back(bound);
    }
    RatVec p;
    RatMat kbasis;
    if (eq_a.empty()) {
        p = zero_vec(h.dim);
        for (std::size_t i = 0; i < h.dim; ++i) {
            RatVec e = zero_vec(h.dim);
            e[i] = 1;
            kbasis.push_back(e);
        }
    } else {
        auto solved = solve_linear(eq_a, eq_b);
        if (!solved.solution) {
            Polytope empty;
            empty.dim = h.dim;
            return empty;
        }
        p = *solved.solution;
        kbasis = solved.kernel;
    }
    const std::size_t s = kbasis.size();

    // Inequalities in u coordinates: (g.K) u >= b - g.p
    std::vector<std::pair<RatVec, Rat>> rows;
    for (const auto& [g, bound] : h.inequalities) {
        RatVec row(s);
        for (std::size_t j = 0; j < s; ++j) row[j] = dot(g, kbasis[j]);
        rows.push_back({std::move(row), bound - dot(g, p)});
    }

    std::vector<RatVec> verts;
    if (s == 0) {
        bool ok = true;
        for (const auto& [row, bound] : rows)
            if (Rat(0) < bound) ok = false;
        if (ok) verts.push_back(p);
    } else {
        if (rows.size() > 64) throw DimensionBudget("vertices_of_hrep: too many inequalities");
        std::vector<std::size_t> comb(s);
        for (std::size_t i = 0; i < s; ++i) comb[i] = i;
        if (rows.size() < s) {
            Polytope empty;
            empty.dim = h.dim;
            return empty;
        }
        while (true) {
            RatMat a;
            RatVec b;
            for (auto i : comb) {
                a.push_back(rows[i].first);
                b.push_back(rows[i].second);
            }
            auto solved = solve_linear(a, b);
            if (solved.solution && solved.kernel.empty()) {
                const RatVec& u = *solved.solution;
                bool feasible = true;
                for (const auto& [row, bound] : rows) {
                    if (dot(row, u) < bound) {
                        feasible = false;
                        break;
                    }
                }
                if (feasible) {
                    RatVec x = p;
                    for (std::size_t j = 0; j < s; ++j)
                        x = vec_add(x, vec_scale(u[j], kbasis[j]));
                    verts.push_back(std::move(x));
                }
            }
            std::size_t i = s;
            while (i > 0 && comb[i - 1] == rows.size() - s + i - 1) --i;
            if (i == 0) break;
            ++comb[i - 1];
            for (std::size_t j = i; j < s; ++j) comb[j] = comb[j - 1] + 1;
        }
    }

    Polytope out;
    out.dim = h.dim;
    out.vertices = dedupe_sorted(verts);
    return out;
}

Polytope intersect(const Polytope& a, const Polytope& b) {
    if (a.dim != b.dim) throw MixedDimensions("intersect: dimension mismatch");
    HRep ha = to_hrep(a);
    const HRep hb = to_hrep(b);
    ha.equalities.insert(ha.equalities.end(), hb.equalities.begin(), hb.equalities.end());
    ha.inequalities.insert(ha.inequalities.end(), hb.inequalities.begin(),
                           hb.inequalities.end());
    return vertices_of_hrep(ha);
}

}  // namespace linsel
