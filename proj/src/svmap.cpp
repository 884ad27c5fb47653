#include "linsel/svmap.hpp"

#include <algorithm>

namespace linsel {

namespace {

Polytope origin_polytope(std::size_t dim) {
    Polytope p;
    p.dim = dim;
    p.vertices = {zero_vec(dim)};
    return p;
}

}  // namespace

// ---------------------------------------------------------------------------
// Regions
// ---------------------------------------------------------------------------

bool Region::holds(const RatVec& p) const {
    for (const auto& [a, b] : eq)
        if (dot(a, p) != b) return false;
    for (const auto& [a, b] : weak)
        if (dot(a, p) < b) return false;
    for (const auto& [a, b] : strict)
        if (dot(a, p) <= b) return false;
    return true;
}

std::optional<std::string> SemilinearCone::classify(const RatVec& p) const {
    if (p.size() != dim) throw MixedDimensions("classify: dimension mismatch");
    for (const auto& r : regions)
        if (r.holds(p)) return r.name;
    return std::nullopt;
}

const Region& SemilinearCone::region(const std::string& name) const {
    for (const auto& r : regions)
        if (r.name == name) return r;
    throw std::out_of_range("unknown region: " + name);
}

namespace {

// Branch program for one assignment of regions to grid cells.  Variables are
// the mn*d cell coordinates plus a shared strictness margin; the objective
// maximizes the margin, capped at 1.
LinearProgram region_branch_program(const SemilinearCone& sc,
                                    const std::vector<RatVec>& xs,
                                    const std::vector<RatVec>& ys,
                                    const std::vector<std::string>& assignment) {
    const std::size_t m = xs.size(), n = ys.size(), d = sc.dim;
    LinearProgram lp;
    lp.num_vars = m * n * d + 1;
    const std::size_t eps = m * n * d;
    if (sc.nonnegative_orthant)
        for (std::size_t v = 0; v < eps; ++v) lp.nonneg.push_back(v);
    auto var = [&](std::size_t cell, std::size_t c) { return cell * d + c; };

    RatVec obj = zero_vec(lp.num_vars);
    obj[eps] = 1;
    lp.objective = obj;

    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t c = 0; c < d; ++c) {
            RatVec row = zero_vec(lp.num_vars);
            for (std::size_t k = 0; k < n; ++k) row[var(j * n + k, c)] = 1;
            lp.equalities.push_back({std::move(row), xs[j][c]});
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t c = 0; c < d; ++c) {
            RatVec row = zero_vec(lp.num_vars);
            for (std::size_t j = 0; j < m; ++j) row[var(j * n + k, c)] = 1;
            lp.equalities.push_back({std::move(row), ys[k][c]});
        }
    }
    for (std::size_t cell = 0; cell < m * n; ++cell) {
        const Region& r = sc.region(assignment[cell]);
        for (const auto& [a, b] : r.eq) {
            RatVec row = zero_vec(lp.num_vars);
            for (std::size_t c = 0; c < d; ++c) row[var(cell, c)] = a[c];
            lp.equalities.push_back({std::move(row), b});
        }
        for (const auto& [a, b] : r.weak) {
            RatVec row = zero_vec(lp.num_vars);
            for (std::size_t c = 0; c < d; ++c) row[var(cell, c)] = a[c];
            lp.inequalities.push_back({std::move(row), b});
        }
        for (const auto& [a, b] : r.strict) {
            RatVec row = zero_vec(lp.num_vars);
            for (std::size_t c = 0; c < d; ++c) row[var(cell, c)] = a[c];
            row[eps] = -1;
            lp.inequalities.push_back({std::move(row), b});
        }
    }
    {
        RatVec row = zero_vec(lp.num_vars);
        row[eps] = -1;
        lp.inequalities.push_back({std::move(row), Rat(-1)});  // eps <= 1
    }
    return lp;
}

// Odometer over per-cell allowed index lists.
bool next_choice(std::vector<std::size_t>& pos,
                 const std::vector<std::vector<std::size_t>>& allowed) {
    for (std::size_t i = pos.size(); i > 0; --i) {
        if (++pos[i - 1] < allowed[i - 1].size()) return true;
        pos[i - 1] = 0;
    }
    return false;
}

// Row and column targets are arbitrary vectors of the ambient space; only
// the grid cells are constrained to the cone.  (The interpolation property
// proper asks for targets inside the cone, but the infeasibility question is
// well-posed without that, and the worked instance needs the relaxation.)
void riesz_validate_regions(const SemilinearCone& sc, const std::vector<RatVec>& xs,
                            const std::vector<RatVec>& ys) {
    if (xs.empty() || ys.empty()) throw EmptyInput("riesz_interpolate_regions: empty side");
    RatVec sx = zero_vec(sc.dim), sy = zero_vec(sc.dim);
    for (const auto& x : xs) {
        if (x.size() != sc.dim) throw MixedDimensions("riesz_interpolate_regions: x_j");
        sx = vec_add(sx, x);
    }
    for (const auto& y : ys) {
        if (y.size() != sc.dim) throw MixedDimensions("riesz_interpolate_regions: y_k");
        sy = vec_add(sy, y);
    }
    if (sx != sy) throw SumMismatch("riesz_interpolate_regions: sums differ");
}

}  // namespace

std::vector<std::vector<std::size_t>> riesz_allowed_regions(
    const SemilinearCone& sc, const std::vector<RatVec>& xs,
    const std::vector<RatVec>& ys) {
    const std::size_t m = xs.size(), n = ys.size();
    std::vector<std::vector<std::size_t>> allowed(m * n);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t r = 0; r < sc.regions.size(); ++r) {
                bool ok = true;
                if (sc.nonnegative_orthant) {
                    for (const auto& [a, b] : sc.regions[r].strict) {
                        if (b != 0) continue;
                        // single positive coordinate functional?
                        std::size_t nz = sc.dim;
                        bool single = true;
                        for (std::size_t c = 0; c < sc.dim; ++c) {
                            if (a[c] == 0) continue;
                            if (nz != sc.dim || a[c] < 0) {
                                single = false;
                                break;
                            }
                            nz = c;
                        }
                        if (!single || nz == sc.dim) continue;
                        if (xs[j][nz] == 0 || ys[k][nz] == 0) {
                            ok = false;
                            break;
                        }
                    }
                }
                if (ok) allowed[j * n + k].push_back(r);
            }
        }
    }
    return allowed;
}

RegionRieszResult riesz_interpolate_regions(const SemilinearCone& sc,
                                            const std::vector<RatVec>& xs,
                                            const std::vector<RatVec>& ys) {
    riesz_validate_regions(sc, xs, ys);
    const std::size_t m = xs.size(), n = ys.size(), d = sc.dim;
    const auto allowed = riesz_allowed_regions(sc, xs, ys);
    RegionRieszResult out;
    for (const auto& cell : allowed)
        if (cell.empty()) return out;  // no admissible assignment at all
    std::vector<std::size_t> pos(m * n, 0);
    do {
        std::vector<std::string> assignment(m * n);
        for (std::size_t c = 0; c < m * n; ++c)
            assignment[c] = sc.regions[allowed[c][pos[c]]].name;
        const LinearProgram lp = region_branch_program(sc, xs, ys, assignment);
        auto res = optimize(lp, Sense::Maximize);
        if (res.status == LpStatus::Optimal && res.value > 0) {
            out.feasible = true;
            out.grid.assign(m, std::vector<RatVec>(n));
            out.grid_regions = assignment;
            for (std::size_t j = 0; j < m; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    RatVec z(d);
                    for (std::size_t c = 0; c < d; ++c)
                        z[c] = res.point[(j * n + k) * d + c];
                    out.grid[j][k] = std::move(z);
                }
            out.branches.clear();
            return out;
        }
        RegionBranch branch;
        branch.assignment = assignment;
        if (res.status == LpStatus::Infeasible) {
            branch.weak_infeasible = true;
            branch.farkas = *res.certificate;
        } else {
            branch.weak_infeasible = false;
            branch.dual = *res.dual;
            branch.bound = res.value;
        }
        out.branches.push_back(std::move(branch));
    } while (next_choice(pos, allowed));
    out.feasible = false;
    return out;
}

bool verify_region_riesz(const SemilinearCone& sc, const std::vector<RatVec>& xs,
                         const std::vector<RatVec>& ys,
                         const std::vector<RegionBranch>& branches) {
    const std::size_t m = xs.size(), n = ys.size();
    const auto allowed = riesz_allowed_regions(sc, xs, ys);
    for (const auto& cell : allowed)
        if (cell.empty()) return branches.empty();
    std::vector<std::size_t> pos(m * n, 0);
    std::size_t at = 0;
    do {
        if (at >= branches.size()) return false;
        const RegionBranch& branch = branches[at++];
        for (std::size_t c = 0; c < m * n; ++c)
            if (branch.assignment[c] != sc.regions[allowed[c][pos[c]]].name) return false;
        const LinearProgram lp = region_branch_program(sc, xs, ys, branch.assignment);
        if (branch.weak_infeasible) {
            if (!certificate_refutes(lp, branch.farkas)) return false;
        } else {
            auto bound = dual_bound(lp, Sense::Maximize, branch.dual);
            if (!bound || *bound > 0) return false;
        }
    } while (next_choice(pos, allowed));
    return at == branches.size();
}

// ---------------------------------------------------------------------------
// Map construction and evaluation
// ---------------------------------------------------------------------------

SetValuedMap make_basis_linear(const Cone& domain, std::vector<Polytope> values) {
    if (!domain.basis_flag)
        throw NoConeBasis("make_basis_linear: domain has no cone-basis");
    if (values.size() != domain.generators.size())
        throw ArityMismatch("make_basis_linear: one value polytope per generator");
    const std::size_t vdim = values.empty() ? 0 : values[0].dim;
    for (const auto& p : values)
        if (p.dim != vdim) throw MixedDimensions("make_basis_linear: value dimensions differ");
    SetValuedMap t;
    t.domain = domain;
    t.space = ValueSpace{SpaceKind::PolytopeSpace, vdim};
    t.impl = BasisLinear{std::move(values)};
    return t;
}

SetValuedMap make_sampled(std::vector<std::pair<RatVec, Polytope>> samples,
                          std::size_t domain_dim) {
    if (samples.empty()) throw EmptyInput("make_sampled: no samples");
    std::vector<RatVec> points;
    for (const auto& [x, p] : samples) {
        if (x.size() != domain_dim) throw MixedDimensions("make_sampled: sample dimension");
        if (is_zero(x)) throw NotInDomain("make_sampled: sample points must be nonzero");
        points.push_back(x);
    }
    const std::size_t vdim = samples[0].second.dim;
    for (const auto& [x, p] : samples)
        if (p.dim != vdim) throw MixedDimensions("make_sampled: value dimensions differ");
    SetValuedMap t;
    t.domain = make_cone(points, domain_dim);
    if (!is_pointed(t.domain))
        throw NotInDomain("make_sampled: sample cone must be pointed");
    t.space = ValueSpace{SpaceKind::PolytopeSpace, vdim};
    t.impl = SampledSuperlinear{std::move(samples)};
    return t;
}

SetValuedMap make_boolean(std::shared_ptr<const SemilinearCone> cone,
                          std::map<std::string, int> values) {
    for (const auto& r : cone->regions)
        if (!values.count(r.name))
            throw ArityMismatch("make_boolean: missing value for region " + r.name);
    for (const auto& [name, v] : values)
        if (v != 0 && v != 1)
            throw ArityMismatch("make_boolean: values must be 0 or 1");
    SetValuedMap t;
    t.domain = cone->closure;
    t.space = ValueSpace{SpaceKind::BooleanSpace, 0};
    t.impl = BooleanRegion{std::move(cone), std::move(values)};
    return t;
}

SetValuedMap make_custom(const Cone& domain, std::size_t value_dim,
                         std::function<Polytope(const RatVec&)> eval, std::string label) {
    SetValuedMap t;
    t.domain = domain;
    t.space = ValueSpace{SpaceKind::PolytopeSpace, value_dim};
    t.impl = CustomMap{std::move(eval), std::move(label)};
    return t;
}

std::vector<RatVec> decomposition_vertices(const std::vector<RatVec>& points,
                                           const RatVec& x) {
    const std::size_t k = points.size(), d = x.size();
    const std::size_t r = rank(points);
    std::vector<RatVec> found;
    if (r == 0) return found;

    std::vector<std::size_t> comb(r);
    for (std::size_t i = 0; i < r; ++i) comb[i] = i;
    while (true) {
        RatMat a(d, RatVec(r));
        for (std::size_t c = 0; c < d; ++c)
            for (std::size_t j = 0; j < r; ++j) a[c][j] = points[comb[j]][c];
        auto solved = solve_linear(a, x);
        if (solved.solution && solved.kernel.empty()) {
            bool ok = true;
            for (const auto& v : *solved.solution)
                if (v < 0) {
                    ok = false;
                    break;
                }
            if (ok) {
                RatVec lambda = zero_vec(k);
                for (std::size_t j = 0; j < r; ++j) lambda[comb[j]] = (*solved.solution)[j];
                found.push_back(std::move(lambda));
            }
        }
        std::size_t i = r;
        while (i > 0 && comb[i - 1] == k - r + i - 1) --i;
        if (i == 0) break;
        ++comb[i - 1];
        for (std::size_t j = i; j < r; ++j) comb[j] = comb[j - 1] + 1;
    }
    std::sort(found.begin(), found.end(), lex_less);
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
}

namespace {

Polytope eval_basis_linear(const SetValuedMap& t, const BasisLinear& bl, const RatVec& x) {
    ConeCoords alpha;
    try {
        alpha = coords(t.domain, x);
    } catch (const NotInCone&) {
        throw NotInDomain("evaluate: point outside the domain cone");
    }
    Polytope acc = origin_polytope(t.space.dim);
    for (std::size_t i = 0; i < alpha.alpha.size(); ++i) {
        if (alpha.alpha[i] == 0) continue;
        acc = minkowski_sum(acc, scale(bl.values[i], alpha.alpha[i]));
    }
    return acc;
}

Polytope eval_sampled(const SetValuedMap& t, const SampledSuperlinear& ss, const RatVec& x) {
    if (!membership(t.domain, x)) throw NotInDomain("evaluate: point outside the domain cone");
    std::vector<RatVec> points;
    for (const auto& [p, v] : ss.samples) points.push_back(p);
    const auto lambdas = decomposition_vertices(points, x);
    if (lambdas.empty()) throw NoRepresentation("evaluate: no decomposition over samples");
    std::vector<RatVec> hull_points;
    for (const auto& lambda : lambdas) {
        Polytope acc = origin_polytope(t.space.dim);
        for (std::size_t i = 0; i < lambda.size(); ++i) {
            if (lambda[i] == 0) continue;
            acc = minkowski_sum(acc, scale(ss.samples[i].second, lambda[i]));
        }
        for (auto& v : acc.vertices) hull_points.push_back(std::move(v));
    }
    return canonicalize(hull_points);
}

}  // namespace

MapValue evaluate(const SetValuedMap& t, const RatVec& x) {
    if (x.size() != t.domain.dim) throw MixedDimensions("evaluate: dimension mismatch");
    if (const auto* bl = std::get_if<BasisLinear>(&t.impl)) return eval_basis_linear(t, *bl, x);
    if (const auto* ss = std::get_if<SampledSuperlinear>(&t.impl)) return eval_sampled(t, *ss, x);
    if (const auto* br = std::get_if<BooleanRegion>(&t.impl)) {
        auto region = br->cone->classify(x);
        if (!region) throw NotInDomain("evaluate: point outside the region cone");
        return br->values.at(*region);
    }
    const auto& cm = std::get<CustomMap>(t.impl);
    return cm.eval(x);
}

Polytope evaluate_poly(const SetValuedMap& t, const RatVec& x) {
    return std::get<Polytope>(evaluate(t, x));
}

int evaluate_bool(const SetValuedMap& t, const RatVec& x) {
    return std::get<int>(evaluate(t, x));
}

// ---------------------------------------------------------------------------
// Randomized checks
// ---------------------------------------------------------------------------

Rat random_rat(std::mt19937_64& rng, int max_num, int max_den) {
    std::uniform_int_distribution<int> num(0, max_num);
    std::uniform_int_distribution<int> den(1, max_den);
    return Rat(num(rng), den(rng));
}

RatVec random_cone_point(const Cone& c, std::mt19937_64& rng) {
    RatVec x = zero_vec(c.dim);
    bool nonzero = false;
    for (const auto& g : c.generators) {
        const Rat w = random_rat(rng);
        if (w != 0) nonzero = true;
        x = vec_add(x, vec_scale(w, g));
    }
    if (!nonzero) x = c.generators[0];
    return x;
}

namespace {

CheckResult run_check(const SetValuedMap& t, unsigned trials, std::uint64_t seed,
                      bool require_equality) {
    std::mt19937_64 rng(seed);
    CheckResult out;

    if (const auto* br = std::get_if<BooleanRegion>(&t.impl)) {
        const auto& sc = *br->cone;
        // Identity preservation on monoid domains: the additive identity must
        // map to the additive identity of the boolean space.
        if (sc.apex_region && br->values.at(*sc.apex_region) != 0) {
            const RatVec apex = sc.sample_region(*sc.apex_region, rng);
            out.pass = false;
            out.refutation = Refutation{apex, apex, "identity"};
            return out;
        }
        std::uniform_int_distribution<std::size_t> pick(0, sc.regions.size() - 1);
        for (unsigned i = 0; i < trials; ++i) {
            const RatVec x = sc.sample_region(sc.regions[pick(rng)].name, rng);
            const RatVec y = sc.sample_region(sc.regions[pick(rng)].name, rng);
            const RatVec sum = vec_add(x, y);
            const auto rx = sc.classify(x), ry = sc.classify(y), rs = sc.classify(sum);
            if (!rx || !ry || !rs)
                throw NotInDomain("check: region cone not closed under addition");
            const int vx = br->values.at(*rx), vy = br->values.at(*ry),
                      vs = br->values.at(*rs);
            const int lhs = std::max(vx, vy);
            const bool bad = require_equality ? (lhs != vs) : (lhs > vs);
            if (bad) {
                out.pass = false;
                out.refutation =
                    Refutation{x, y, require_equality ? "additivity" : "superadditivity"};
                return out;
            }
        }
        return out;
    }

    for (unsigned i = 0; i < trials; ++i) {
        const RatVec x = random_cone_point(t.domain, rng);
        const RatVec y = random_cone_point(t.domain, rng);
        const Polytope ex = evaluate_poly(t, x);
        const Polytope ey = evaluate_poly(t, y);
        const Polytope exy = evaluate_poly(t, vec_add(x, y));
        bool included = true;
        for (const auto& u : ex.vertices) {
            for (const auto& v : ey.vertices) {
                if (!contains(exy, vec_add(u, v))) {
                    included = false;
                    break;
                }
            }
            if (!included) break;
        }
        if (!included) {
            out.pass = false;
            out.refutation = Refutation{x, y, "superadditivity"};
            return out;
        }
        if (require_equality) {
            std::vector<RatVec> pairwise;
            for (const auto& u : ex.vertices)
                for (const auto& v : ey.vertices) pairwise.push_back(vec_add(u, v));
            for (const auto& w : exy.vertices) {
                if (!in_hull(pairwise, w)) {
                    out.pass = false;
                    out.refutation = Refutation{x, y, "additivity"};
                    return out;
                }
            }
        }
        // positive homogeneity
        const Rat lambda = random_rat(rng) + Rat(1, 2);
        if (evaluate_poly(t, vec_scale(lambda, x)) != scale(ex, lambda)) {
            out.pass = false;
            out.refutation = Refutation{x, x, "homogeneity"};
            return out;
        }
    }
    return out;
}

}  // namespace

CheckResult check_superlinear(const SetValuedMap& t, unsigned trials, std::uint64_t seed) {
    return run_check(t, trials, seed, false);
}

CheckResult check_linear(const SetValuedMap& t, unsigned trials, std::uint64_t seed) {
    return run_check(t, trials, seed, true);
}

// ---------------------------------------------------------------------------
// Greatest submaps
// ---------------------------------------------------------------------------

namespace {

// Next weak composition of a fixed total in lexicographically descending
// order; starts from (total, 0, ..., 0).
bool next_composition(std::vector<std::size_t>& m) {
    const std::size_t v = m.size();
    if (v <= 1) return false;
    std::size_t i = v - 1;
    while (i > 0 && m[i - 1] == 0) --i;
    if (i == 0) return false;  // all mass in the last slot
    --m[i - 1];
    std::size_t moved = 1;
    for (std::size_t t = i; t < v; ++t) {
        moved += m[t];
        m[t] = 0;
    }
    m[i] = moved;
    return true;
}

}  // namespace

std::vector<RatVec> candidate_directions(const Cone& domain, unsigned depth) {
    std::vector<RatVec> out = domain.generators;
    const Polytope base = base_of(domain).base;
    const std::size_t v = base.vertices.size();
    for (unsigned k = 1; k <= depth; ++k) {
        std::vector<std::size_t> m(v, 0);
        m[0] = k;
        do {
            RatVec p = zero_vec(domain.dim);
            for (std::size_t i = 0; i < v; ++i)
                if (m[i] > 0)
                    p = vec_add(p, vec_scale(Rat(static_cast<long>(m[i]), static_cast<long>(k)),
                                             base.vertices[i]));
            out.push_back(std::move(p));
        } while (next_composition(m));
    }
    // dedupe by direction
    std::vector<RatVec> rays;
    for (const auto& p : out) {
        if (is_zero(p)) continue;
        for (const auto& c : p) {
            if (c != 0) {
                rays.push_back(vec_scale(Rat(1) / abs(c), p));
                break;
            }
        }
    }
    std::sort(rays.begin(), rays.end(), lex_less);
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
    return rays;
}

namespace {

SubmapReport submap_boolean(const SetValuedMap& t, const BooleanRegion& br, unsigned depth,
                            unsigned trials, std::uint64_t seed) {
    const auto& sc = *br.cone;
    std::mt19937_64 rng(seed);
    if (sc.apex_region && br.values.at(*sc.apex_region) != 0)
        throw NotSuperlinear("greatest_linear_submap: boolean map does not preserve identity");

    // Candidate rays inside zero-valued regions: extreme rays of the closure
    // plus nested base grids, classified exactly.
    std::vector<RatVec> zero_rays;
    for (const auto& c : candidate_directions(t.domain, depth)) {
        const auto region = sc.classify(c);
        if (region && br.values.at(*region) == 0) zero_rays.push_back(c);
    }

    SubmapReport report;
    report.exact = false;
    report.depth = depth;
    report.trials = trials;

    std::map<std::string, int> s_values;
    for (const auto& region : sc.regions) {
        const int tv = br.values.at(region.name);
        if (sc.apex_region && region.name == *sc.apex_region) {
            s_values[region.name] = 0;
            continue;
        }
        std::vector<RatVec> probes;
        for (int i = 0; i < 6; ++i) probes.push_back(sc.sample_region(region.name, rng));
        if (tv == 0) {
            s_values[region.name] = 0;
            report.zero_witnesses[region.name] = {probes[0]};
            continue;
        }
        // T = 1 here: S = 0 iff the probe decomposes into zero-valued parts.
        std::optional<bool> verdict;
        std::vector<RatVec> witness;
        for (const auto& x : probes) {
            bool zero_decomposable = false;
            if (!zero_rays.empty()) {
                LinearProgram lp;
                lp.num_vars = zero_rays.size();
                for (std::size_t j = 0; j < lp.num_vars; ++j) lp.nonneg.push_back(j);
                for (std::size_t c = 0; c < sc.dim; ++c) {
                    RatVec row(lp.num_vars);
                    for (std::size_t j = 0; j < lp.num_vars; ++j) row[j] = zero_rays[j][c];
                    lp.equalities.push_back({std::move(row), x[c]});
                }
                auto res = solve_feasibility(lp);
                if (res.status == LpStatus::Feasible) {
                    zero_decomposable = true;
                    if (witness.empty()) {
                        for (std::size_t j = 0; j < zero_rays.size(); ++j)
                            if (res.point[j] != 0)
                                witness.push_back(vec_scale(res.point[j], zero_rays[j]));
                    }
                }
            }
            if (verdict && *verdict != zero_decomposable)
                throw NotSuperlinear(
                    "greatest_linear_submap: region verdict not constant; refine regions");
            verdict = zero_decomposable;
        }
        if (*verdict) {
            s_values[region.name] = 0;
            report.zero_witnesses[region.name] = witness;
        } else {
            // Randomized refutation attempts for the claim S = 1: sample
            // decompositions of a probe into parts of the cone and look for
            // one with every part valued 0.
            bool refuted = false;
            std::vector<RatVec> refuting_parts;
            std::uniform_int_distribution<int> coin(0, 99);
            for (unsigned i = 0; i < trials && !refuted; ++i) {
                const RatVec& x = probes[i % probes.size()];
                // split x = u + v by rejection on region membership
                RatVec weights(sc.dim);
                for (auto& w : weights)
                    w = Rat(coin(rng), 100);
                RatVec u(sc.dim);
                for (std::size_t c = 0; c < sc.dim; ++c) u[c] = weights[c] * x[c];
                const RatVec v = vec_sub(x, u);
                const auto ru = sc.classify(u), rv = sc.classify(v);
                if (!ru || !rv) continue;
                if (br.values.at(*ru) == 0 && br.values.at(*rv) == 0) {
                    refuted = true;
                    refuting_parts = {u, v};
                }
            }
            if (refuted) {
                s_values[region.name] = 0;
                report.zero_witnesses[region.name] = refuting_parts;
            } else {
                s_values[region.name] = 1;
                report.not_refuted.push_back(region.name);
            }
        }
    }
    report.map = make_boolean(br.cone, std::move(s_values));
    return report;
}

SubmapReport submap_sampled_depth(const SetValuedMap& t, unsigned depth) {
    // Over-approximation on non-simplicial domains: intersect the candidate
    // decompositions read off basic solutions over an enlarging ray family.
    const std::vector<RatVec> candidates = candidate_directions(t.domain, depth);
    SetValuedMap inner = t;
    const std::size_t vdim = t.space.dim;
    auto eval = [inner, candidates, vdim](const RatVec& x) -> Polytope {
        const auto lambdas = decomposition_vertices(candidates, x);
        if (lambdas.empty()) throw NotInDomain("submap: point outside the domain cone");
        std::optional<Polytope> acc;
        for (const auto& lambda : lambdas) {
            Polytope value;
            value.dim = vdim;
            value.vertices = {zero_vec(vdim)};
            for (std::size_t j = 0; j < lambda.size(); ++j) {
                if (lambda[j] == 0) continue;
                value = minkowski_sum(
                    value, scale(evaluate_poly(inner, candidates[j]), lambda[j]));
            }
            if (!acc) {
                acc = value;
                continue;
            }
            bool shrink = false;
            for (const auto& v : acc->vertices) {
                if (!contains(value, v)) {
                    shrink = true;
                    break;
                }
            }
            if (shrink) {
                acc = intersect(*acc, value);
                if (acc->vertices.empty())
                    throw NotSuperlinear("submap: empty decomposition intersection");
            }
        }
        return *acc;
    };
    SubmapReport report;
    report.map = make_custom(t.domain, vdim, eval, "depth-submap");
    report.exact = false;
    report.depth = depth;
    return report;
}

}  // namespace

SubmapReport greatest_linear_submap(const SetValuedMap& t, unsigned depth,
                                    unsigned check_trials, std::uint64_t seed) {
    if (check_trials > 0) {
        auto chk = check_superlinear(t, check_trials, seed);
        if (!chk.pass)
            throw NotSuperlinear("greatest_linear_submap: superlinearity refuted (" +
                                 chk.refutation->law + ")");
    }
    if (t.is_basis_linear()) {
        SubmapReport report;
        report.map = t;
        report.exact = true;
        return report;
    }
    if (const auto* br = std::get_if<BooleanRegion>(&t.impl))
        return submap_boolean(t, *br, depth, check_trials, seed);
    if (t.is_sampled()) {
        if (t.domain.basis_flag) {
            std::vector<Polytope> values;
            for (const auto& b : t.domain.generators) values.push_back(evaluate_poly(t, b));
            SubmapReport report;
            report.map = make_basis_linear(t.domain, std::move(values));
            report.exact = true;
            return report;
        }
        return submap_sampled_depth(t, depth);
    }
    throw NotSuperlinear("greatest_linear_submap: unsupported map representation");
}

Polytope AffineSubmapReport::eval(const RatVec& x) const {
    RatVec lifted;
    lifted.reserve(x.size() + 1);
    lifted.push_back(Rat(1));
    lifted.insert(lifted.end(), x.begin(), x.end());
    return evaluate_poly(suspension.map, lifted);
}

AffineSubmapReport greatest_affine_submap(const SetValuedMap& t_sus, const Polytope& k,
                                          unsigned depth, unsigned check_trials,
                                          std::uint64_t seed) {
    AffineSubmapReport out;
    out.suspension = greatest_linear_submap(t_sus, depth, check_trials, seed);
    out.base = k;
    return out;
}

SetValuedMap lift_to_suspension(const Polytope& k,
                                const std::vector<std::pair<RatVec, Polytope>>& data,
                                std::size_t value_dim) {
    std::vector<std::pair<RatVec, Polytope>> samples;
    for (const auto& [x, p] : data) {
        if (x.size() != k.dim) throw MixedDimensions("lift_to_suspension: data dimension");
        if (p.dim != value_dim) throw MixedDimensions("lift_to_suspension: value dimension");
        RatVec lifted;
        lifted.reserve(k.dim + 1);
        lifted.push_back(Rat(1));
        lifted.insert(lifted.end(), x.begin(), x.end());
        samples.push_back({std::move(lifted), p});
    }
    return make_sampled(std::move(samples), k.dim + 1);
}

}  // namespace linsel
