#include "linsel/selection.hpp"

#include <algorithm>

namespace linsel {

FunctionalSet make_functional_set(std::vector<Functional> functionals, std::size_t dim) {
    RatMat rows;
    for (const auto& f : functionals) {
        if (f.coeffs.size() != dim)
            throw MixedDimensions("make_functional_set: functional dimension");
        rows.push_back(f.coeffs);
    }
    if (rank(rows) != dim)
        throw NotExhaustive("make_functional_set: functionals do not identify points");
    return FunctionalSet{std::move(functionals), dim};
}

FunctionalSet coordinate_functionals(std::size_t dim) {
    std::vector<Functional> fs;
    for (std::size_t i = 0; i < dim; ++i) {
        RatVec c = zero_vec(dim);
        c[i] = 1;
        fs.push_back(Functional{std::move(c)});
    }
    return FunctionalSet{std::move(fs), dim};
}

TomoCoords tomo_coords(const RatVec& z, const Polytope& k, const FunctionalSet& d) {
    if (d.dim != k.dim) throw MixedDimensions("tomo_coords: functional set dimension");
    if (!contains(k, z)) throw PointOutside("tomo_coords: point outside the polytope");
    TomoCoords out;
    Polytope cur = k;
    for (const auto& f : d.functionals) {
        const SupportInterval s = support(cur, f);
        Rat theta(0);
        if (!s.degenerate()) theta = (f(z) - s.low) / (s.high - s.low);
        out.thetas.push_back(theta);
        cur = section(cur, f, theta);
    }
    return out;
}

RatVec tomo_reconstruct(const Polytope& k, const TomoCoords& theta,
                        const FunctionalSet& d) {
    if (d.dim != k.dim) throw MixedDimensions("tomo_reconstruct: functional set dimension");
    if (theta.thetas.size() != d.functionals.size())
        throw ArityMismatch("tomo_reconstruct: one theta per functional");
    Polytope cur = k;
    for (std::size_t j = 0; j < d.functionals.size(); ++j)
        cur = section(cur, d.functionals[j], theta.thetas[j]);
    if (!cur.is_singleton())
        throw NotExhaustive("tomo_reconstruct: sections did not collapse to a point");
    return cur.vertices[0];
}

SetValuedMap section_map(const SetValuedMap& t, const Functional& f, const Rat& theta,
                         unsigned probes, std::uint64_t seed) {
    const auto* bl = std::get_if<BasisLinear>(&t.impl);
    if (!bl) throw NotLinear("section_map: expects a basis-linear map");

    std::vector<Polytope> sectioned;
    for (const auto& p : bl->values) sectioned.push_back(section(p, f, theta));
    SetValuedMap candidate = make_basis_linear(t.domain, std::move(sectioned));

    std::mt19937_64 rng(seed);
    bool commutes = true;
    for (unsigned i = 0; i < probes && commutes; ++i) {
        const RatVec x = random_cone_point(t.domain, rng);
        commutes = evaluate_poly(candidate, x) == section(evaluate_poly(t, x), f, theta);
    }
    if (commutes) return candidate;

    SetValuedMap inner = t;
    Functional ff = f;
    Rat th = theta;
    return make_custom(
        t.domain, t.space.dim,
        [inner, ff, th](const RatVec& x) { return section(evaluate_poly(inner, x), ff, th); },
        "sectioned");
}

namespace {

// Lexicographically least solution of
//   sum_b alpha_b w_b = y,  w_b in conv(vertices of values[b])
// over the active generators, minimizing the concatenated coordinates of the
// w_b in generator-then-coordinate order.  Exact and deterministic.
std::vector<RatVec> lex_min_decomposition(const std::vector<Polytope>& values,
                                          const std::vector<std::size_t>& active,
                                          const RatVec& alpha, const RatVec& y) {
    const std::size_t vdim = y.size();
    std::vector<std::size_t> offset;
    std::size_t nvars = 0;
    for (auto b : active) {
        offset.push_back(nvars);
        nvars += values[b].vertices.size();
    }
    LinearProgram lp;
    lp.num_vars = nvars;
    for (std::size_t v = 0; v < nvars; ++v) lp.nonneg.push_back(v);
    for (std::size_t i = 0; i < active.size(); ++i) {
        RatVec row = zero_vec(nvars);
        for (std::size_t v = 0; v < values[active[i]].vertices.size(); ++v)
            row[offset[i] + v] = 1;
        lp.equalities.push_back({std::move(row), Rat(1)});
    }
    for (std::size_t c = 0; c < vdim; ++c) {
        RatVec row = zero_vec(nvars);
        for (std::size_t i = 0; i < active.size(); ++i) {
            const auto& verts = values[active[i]].vertices;
            for (std::size_t v = 0; v < verts.size(); ++v)
                row[offset[i] + v] = alpha[active[i]] * verts[v][c];
        }
        lp.equalities.push_back({std::move(row), y[c]});
    }

    for (std::size_t i = 0; i < active.size(); ++i) {
        for (std::size_t c = 0; c < vdim; ++c) {
            RatVec obj = zero_vec(nvars);
            const auto& verts = values[active[i]].vertices;
            for (std::size_t v = 0; v < verts.size(); ++v)
                obj[offset[i] + v] = verts[v][c];
            lp.objective = obj;
            auto res = optimize(lp, Sense::Minimize);
            if (res.status != LpStatus::Optimal)
                throw NoSelection("lex_min_decomposition: infeasible split");
            lp.equalities.push_back({obj, res.value});
        }
    }
    auto final = solve_feasibility(lp);
    if (final.status != LpStatus::Feasible)
        throw std::logic_error("lex_min_decomposition: pinned system infeasible");
    std::vector<RatVec> w(active.size());
    for (std::size_t i = 0; i < active.size(); ++i) {
        RatVec point = zero_vec(vdim);
        const auto& verts = values[active[i]].vertices;
        for (std::size_t v = 0; v < verts.size(); ++v)
            point = vec_add(point, vec_scale(final.point[offset[i] + v], verts[v]));
        w[i] = std::move(point);
    }
    return w;
}

}  // namespace

RatVec Selection::evaluate(const RatVec& x) const {
    if (const auto* bt = std::get_if<BasisTable>(&impl)) {
        ConeCoords alpha;
        try {
            alpha = coords(bt->domain, x);
        } catch (const NotInCone&) {
            throw NotInDomain("selection: point outside the domain cone");
        }
        RatVec out = zero_vec(bt->values.empty() ? 0 : bt->values[0].size());
        for (std::size_t i = 0; i < alpha.alpha.size(); ++i)
            if (alpha.alpha[i] != 0)
                out = vec_add(out, vec_scale(alpha.alpha[i], bt->values[i]));
        return out;
    }
    if (const auto* ts = std::get_if<TomoSelection>(&impl))
        return tomo_reconstruct(ts->map_eval(x), ts->theta, ts->functionals);
    if (const auto* bc = std::get_if<Barycentric>(&impl)) {
        const RatVec lambda = barycentric_coords(bc->simplex, x);
        RatVec out = zero_vec(bc->choices.empty() ? 0 : bc->choices[0].size());
        for (std::size_t i = 0; i < lambda.size(); ++i)
            if (lambda[i] != 0) out = vec_add(out, vec_scale(lambda[i], bc->choices[i]));
        return out;
    }
    throw std::logic_error("selection: node-table selections evaluate at node combos");
}

Selection linear_selection_through(const SetValuedMap& a, const RatVec& x,
                                   const RatVec& y, const FunctionalSet& d,
                                   unsigned lin_check_trials, std::uint64_t seed) {
    if (d.dim != a.space.dim)
        throw MixedDimensions("linear_selection_through: functionals live on the value space");
    const Polytope ax = evaluate_poly(a, x);
    if (!contains(ax, y))
        throw PointNotInValue("linear_selection_through: y outside A(x)");
    if (lin_check_trials > 0) {
        auto chk = check_linear(a, lin_check_trials, seed);
        if (!chk.pass)
            throw NotLinear("linear_selection_through: linearity refuted (" +
                            chk.refutation->law + ")");
    }
    const TomoCoords theta = tomo_coords(y, ax, d);

    if (std::holds_alternative<SampledSuperlinear>(a.impl)) {
        if (!a.domain.basis_flag)
            throw NoConeBasis("linear_selection_through: sampled map without cone-basis");
        auto submap = greatest_linear_submap(a, 1);
        if (!contains(evaluate_poly(submap.map, x), y))
            throw NoSelection(
                "linear_selection_through: no linear selection passes through (x, y)");
        return linear_selection_through(submap.map, x, y, d, 0, seed);
    }

    if (const auto* bl = std::get_if<BasisLinear>(&a.impl)) {
        const ConeCoords alpha = coords(a.domain, x);
        const std::size_t n = a.domain.generators.size();
        std::vector<RatVec> table(n);
        // Theta-transport per generator; keep it when it reproduces y.
        for (std::size_t b = 0; b < n; ++b)
            table[b] = tomo_reconstruct(bl->values[b], theta, d);
        RatVec combo = zero_vec(a.space.dim);
        for (std::size_t b = 0; b < n; ++b)
            if (alpha.alpha[b] != 0)
                combo = vec_add(combo, vec_scale(alpha.alpha[b], table[b]));
        if (combo != y) {
            std::vector<std::size_t> active;
            for (std::size_t b = 0; b < n; ++b)
                if (alpha.alpha[b] != 0) active.push_back(b);
            const auto w = lex_min_decomposition(bl->values, active, alpha.alpha, y);
            for (std::size_t i = 0; i < active.size(); ++i) table[active[i]] = w[i];
        }
        Selection sel;
        sel.impl = BasisTable{a.domain, std::move(table)};
        sel.theta = theta;
        return sel;
    }

    if (const auto* cm = std::get_if<CustomMap>(&a.impl)) {
        Selection sel;
        sel.impl = TomoSelection{cm->eval, theta, d};
        sel.theta = theta;
        return sel;
    }
    throw NotLinear("linear_selection_through: unsupported map representation");
}

ExistsResult selection_exists_through(const SetValuedMap& t, const RatVec& x,
                                      const RatVec& y, unsigned depth) {
    const Polytope tx = evaluate_poly(t, x);
    if (!contains(tx, y))
        throw PointNotInValue("selection_exists_through: y outside T(x)");
    ExistsResult out;
    if (t.is_basis_linear()) {
        out.answer = ExistsAnswer::Yes;
        return out;
    }
    if (t.domain.basis_flag) {
        // y in sum alpha_b(x) T(b): one exact feasibility question.
        const ConeCoords alpha = coords(t.domain, x);
        std::vector<Polytope> values;
        for (const auto& b : t.domain.generators) values.push_back(evaluate_poly(t, b));
        std::vector<std::size_t> active;
        for (std::size_t b = 0; b < values.size(); ++b)
            if (alpha.alpha[b] != 0) active.push_back(b);
        Polytope sum;
        sum.dim = t.space.dim;
        sum.vertices = {zero_vec(t.space.dim)};
        for (auto b : active) sum = minkowski_sum(sum, scale(values[b], alpha.alpha[b]));
        if (contains(sum, y)) {
            out.answer = ExistsAnswer::Yes;
        } else {
            out.answer = ExistsAnswer::No;
            for (auto b : active)
                out.witness.push_back(vec_scale(alpha.alpha[b], t.domain.generators[b]));
        }
        return out;
    }

    // Depth-limited search over candidate decompositions.
    const auto candidates = candidate_directions(t.domain, depth);
    for (const auto& lambda : decomposition_vertices(candidates, x)) {
        Polytope sum;
        sum.dim = t.space.dim;
        sum.vertices = {zero_vec(t.space.dim)};
        std::vector<RatVec> parts;
        for (std::size_t j = 0; j < lambda.size(); ++j) {
            if (lambda[j] == 0) continue;
            sum = minkowski_sum(sum, scale(evaluate_poly(t, candidates[j]), lambda[j]));
            parts.push_back(vec_scale(lambda[j], candidates[j]));
        }
        if (!contains(sum, y)) {
            out.answer = ExistsAnswer::No;
            out.witness = std::move(parts);
            return out;
        }
    }
    out.answer = ExistsAnswer::Unknown;
    out.depth = depth;
    return out;
}

Selection affine_selection_through(const SetValuedMap& t_sus, const Polytope& k,
                                   const RatVec& x, const RatVec& y,
                                   const FunctionalSet& d) {
    if (x.size() != k.dim)
        throw MixedDimensions("affine_selection_through: x lives in the base");
    if (!t_sus.domain.basis_flag)
        throw NoConeBasis("affine_selection_through: suspension has no cone-basis");
    RatVec lifted;
    lifted.reserve(k.dim + 1);
    lifted.push_back(Rat(1));
    lifted.insert(lifted.end(), x.begin(), x.end());

    const Polytope tx = evaluate_poly(t_sus, lifted);
    if (!contains(tx, y))
        throw PointNotInValue("affine_selection_through: y outside T(x)");
    auto exists = selection_exists_through(t_sus, lifted, y, 1);
    if (exists.answer != ExistsAnswer::Yes)
        throw NoSelection("affine_selection_through: no affine selection through (x, y)");

    auto submap = greatest_linear_submap(t_sus, 1);
    Selection sus_sel = linear_selection_through(submap.map, lifted, y, d);

    // The suspension of a simplex is simplicial, so the affine restriction is
    // the barycentric interpolation of the vertex values.
    std::vector<RatVec> choices;
    for (const auto& v : k.vertices) {
        RatVec lift_v;
        lift_v.reserve(k.dim + 1);
        lift_v.push_back(Rat(1));
        lift_v.insert(lift_v.end(), v.begin(), v.end());
        choices.push_back(sus_sel.evaluate(lift_v));
    }
    Selection sel;
    sel.impl = Barycentric{k, std::move(choices)};
    sel.theta = sus_sel.theta;
    return sel;
}

Selection barycentric_selection(const Polytope& k, const std::vector<RatVec>& choices,
                                const SetValuedMap* t_sus) {
    if (!is_simplex(k)) throw NotSimplex("barycentric_selection: not a simplex");
    if (choices.size() != k.vertices.size())
        throw ArityMismatch("barycentric_selection: one choice per canonical vertex");
    if (t_sus) {
        for (std::size_t i = 0; i < k.vertices.size(); ++i) {
            RatVec lift_v;
            lift_v.push_back(Rat(1));
            lift_v.insert(lift_v.end(), k.vertices[i].begin(), k.vertices[i].end());
            if (!contains(evaluate_poly(*t_sus, lift_v), choices[i]))
                throw ChoiceOutsideValue("barycentric_selection: choice outside T(v)");
        }
    }
    Selection sel;
    sel.impl = Barycentric{k, choices};
    return sel;
}

NestingBasis make_nesting_basis(std::vector<std::vector<RatVec>> nodes) {
    if (nodes.empty()) throw EmptyInput("make_nesting_basis: no nodes");
    for (std::size_t n = 0; n < nodes.size(); ++n)
        if (nodes[n].size() != (std::size_t{1} << n))
            throw ArityMismatch("make_nesting_basis: level " + std::to_string(n) +
                                " must hold 2^n nodes");
    for (std::size_t n = 0; n + 1 < nodes.size(); ++n)
        for (std::size_t k = 0; k < nodes[n].size(); ++k)
            if (nodes[n][k] != vec_add(nodes[n + 1][2 * k], nodes[n + 1][2 * k + 1]))
                throw SumMismatch("make_nesting_basis: node is not the sum of its children");
    for (std::size_t n1 = 0; n1 < nodes.size(); ++n1)
        for (std::size_t k1 = 0; k1 < nodes[n1].size(); ++k1)
            for (std::size_t n2 = n1; n2 < nodes.size(); ++n2)
                for (std::size_t k2 = (n1 == n2 ? k1 + 1 : 0); k2 < nodes[n2].size(); ++k2)
                    if (nodes[n1][k1] == nodes[n2][k2] && !is_zero(nodes[n1][k1]))
                        throw SumMismatch(
                            "make_nesting_basis: repeated nonzero node vector");
    NestingBasis b;
    b.depth = nodes.size() - 1;
    b.nodes = std::move(nodes);
    return b;
}

namespace {

Polytope reflect(const Polytope& p) {
    std::vector<RatVec> verts;
    for (const auto& v : p.vertices) verts.push_back(vec_scale(Rat(-1), v));
    std::sort(verts.begin(), verts.end(), lex_less);
    Polytope out;
    out.dim = p.dim;
    out.vertices = std::move(verts);
    return out;
}

}  // namespace

Selection nesting_selection(
    const NestingBasis& basis,
    const std::function<Polytope(std::size_t, std::size_t)>& node_values, const RatVec& y0,
    SplitRule rule) {
    const Polytope root = node_values(0, 0);
    if (!contains(root, y0))
        throw PointNotInValue("nesting_selection: y0 outside T(b_00)");
    const std::size_t vdim = root.dim;
    const FunctionalSet d = coordinate_functionals(vdim);
    const Rat theta_value = rule == SplitRule::Leftmost ? Rat(0) : Rat(1, 2);
    TomoCoords theta;
    theta.thetas.assign(vdim, theta_value);

    std::vector<std::vector<RatVec>> table(basis.nodes.size());
    table[0] = {y0};
    for (std::size_t n = 0; n + 1 < basis.nodes.size(); ++n) {
        table[n + 1].resize(basis.nodes[n + 1].size());
        for (std::size_t k = 0; k < basis.nodes[n].size(); ++k) {
            const Polytope left = node_values(n + 1, 2 * k);
            const Polytope right = node_values(n + 1, 2 * k + 1);
            Polytope shifted;  // S(parent) - T(right)
            {
                Polytope s_point;
                s_point.dim = vdim;
                s_point.vertices = {table[n][k]};
                shifted = minkowski_sum(s_point, reflect(right));
            }
            const Polytope feasible = intersect(left, shifted);
            if (feasible.vertices.empty())
                throw InfeasibleSplit("nesting_selection: T is not additive at node " +
                                      std::to_string(n) + "," + std::to_string(k));
            const RatVec g = tomo_reconstruct(feasible, theta, d);
            table[n + 1][2 * k] = g;
            table[n + 1][2 * k + 1] = vec_sub(table[n][k], g);
        }
    }
    Selection sel;
    sel.impl = NodeTable{std::move(table)};
    sel.theta = theta;
    return sel;
}

const std::vector<std::vector<RatVec>>& node_table(const Selection& s) {
    return std::get<NodeTable>(s.impl).values;
}

RatVec evaluate_node_combo(const Selection& s, const std::vector<NodeRef>& combo) {
    const auto& table = std::get<NodeTable>(s.impl).values;
    if (combo.empty()) throw EmptyInput("evaluate_node_combo: empty combination");
    RatVec out;
    for (const auto& ref : combo) {
        if (ref.coeff < 0)
            throw PointOutside("evaluate_node_combo: coefficients must be nonnegative");
        const RatVec& v = table.at(ref.level).at(ref.index);
        if (out.empty()) out = zero_vec(v.size());
        out = vec_add(out, vec_scale(ref.coeff, v));
    }
    return out;
}

}  // namespace linsel
