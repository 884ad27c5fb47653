#include "linsel/json_io.hpp"

#include <sstream>

namespace linsel {

namespace {

const Json& require(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(std::string("missing field '") + key + "'");
    return *it;
}

std::string require_string(const Json& j, const char* key) {
    const Json& v = require(j, key);
    if (!v.is_string()) throw SchemaError(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

}  // namespace

Json rat_to_json(const Rat& value) {
    if (denominator(value) == 1) {
        std::ostringstream out;
        out << numerator(value);
        return Json(out.str());
    }
    return Json(rat_to_string(value));
}

Rat rat_from_json(const Json& j) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_string()) {
        try {
            return parse_rat(j.get<std::string>());
        } catch (const MalformedRational& e) {
            throw SchemaError(e.what());
        }
    }
    throw SchemaError("rationals must be integers or 'p/q' strings");
}

void reject_floats(const Json& document) {
    if (document.is_number_float())
        throw SchemaError("floating-point literals are not accepted");
    if (document.is_object() || document.is_array())
        for (const auto& item : document) reject_floats(item);
}

Json vec_to_json(const RatVec& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(rat_to_json(x));
    return out;
}

RatVec vec_from_json(const Json& j) {
    if (!j.is_array()) throw SchemaError("vector must be an array");
    RatVec out;
    for (const auto& item : j) out.push_back(rat_from_json(item));
    return out;
}

Json polytope_to_json(const Polytope& p) {
    Json verts = Json::array();
    for (const auto& v : p.vertices) verts.push_back(vec_to_json(v));
    return Json{{"vertices", verts}};
}

Polytope polytope_from_json(const Json& j) {
    const Json& verts = j.is_array() ? j : require(j, "vertices");
    std::vector<RatVec> pts;
    for (const auto& item : verts) pts.push_back(vec_from_json(item));
    return canonicalize(pts);
}

namespace {

Json matrix_to_json(const RatMat& m) {
    Json out = Json::array();
    for (const auto& row : m) out.push_back(vec_to_json(row));
    return out;
}

RatMat matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw SchemaError("matrix must be a nonempty array");
    RatMat out;
    for (const auto& row : j) out.push_back(vec_from_json(row));
    return out;
}

Cone cone_from_json(const Json& j) {
    const Json& gens = require(j, "generators");
    std::vector<RatVec> g;
    for (const auto& item : gens) g.push_back(vec_from_json(item));
    if (g.empty()) throw SchemaError("cone needs generators");
    return make_cone(g, g[0].size());
}

Json cone_to_json(const Cone& c) {
    Json gens = Json::array();
    for (const auto& g : c.generators) gens.push_back(vec_to_json(g));
    return Json{{"generators", gens}, {"basis", c.basis_flag}};
}

FunctionalSet functionals_for(const Json& payload, std::size_t dim,
                              const RunFlags& flags) {
    std::vector<Functional> fs;
    if (payload.contains("functionals")) {
        for (const auto& item : payload["functionals"])
            fs.push_back(Functional{vec_from_json(item)});
    } else {
        fs = coordinate_functionals(dim).functionals;
    }
    if (!flags.functional_order.empty()) {
        std::vector<Functional> ordered;
        std::stringstream ss(flags.functional_order);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            const std::size_t idx = std::stoul(tok);
            if (idx >= fs.size()) throw SchemaError("functional-order index out of range");
            ordered.push_back(fs[idx]);
        }
        fs = std::move(ordered);
    }
    return make_functional_set(std::move(fs), dim);
}

// Basis-linear maps arrive as (generator, value) pairs; values are rescaled
// onto the canonical ray representatives.
SetValuedMap basis_linear_from_json(const Json& j) {
    const Json& pairs = require(j, "values");
    std::vector<std::pair<RatVec, Polytope>> data;
    for (const auto& item : pairs)
        data.push_back({vec_from_json(require(item, "generator")),
                        polytope_from_json(require(item, "value"))});
    if (data.empty()) throw SchemaError("basis-linear map needs values");
    std::vector<RatVec> gens;
    for (const auto& [g, p] : data) gens.push_back(g);
    const Cone domain = make_cone(gens, gens[0].size());
    std::vector<Polytope> values;
    for (const auto& canonical : domain.generators) {
        bool found = false;
        for (const auto& [g, p] : data) {
            // canonical = g / lead  =>  value(canonical) = value(g) / lead
            Rat lead(0);
            for (const auto& c : g)
                if (c != 0) {
                    lead = abs(c);
                    break;
                }
            if (vec_scale(Rat(1) / lead, g) == canonical) {
                values.push_back(scale(p, Rat(1) / lead));
                found = true;
                break;
            }
        }
        if (!found)
            throw SchemaError("basis-linear map: value missing for a canonical generator");
    }
    return make_basis_linear(domain, std::move(values));
}

SetValuedMap map_from_json(const Json& j) {
    const std::string type = require_string(j, "type");
    if (type == "basis-linear") return basis_linear_from_json(j);
    if (type == "sampled") {
        std::vector<std::pair<RatVec, Polytope>> samples;
        for (const auto& item : require(j, "samples"))
            samples.push_back({vec_from_json(require(item, "point")),
                               polytope_from_json(require(item, "value"))});
        if (samples.empty()) throw SchemaError("sampled map needs samples");
        return make_sampled(samples, samples[0].first.size());
    }
    if (type == "fixture") {
        const std::string name = require_string(j, "name");
        if (name == "discontinuous-tomo-selection") return fixtures::segment_family_map();
        if (name == "square-base-greatest-submap")
            return fixtures::square_base_submap_fixture();
        throw SchemaError("unknown map fixture: " + name);
    }
    throw SchemaError("unknown map type: " + type);
}

Json run_tomo(const Json& payload, const RunFlags& flags) {
    const Polytope k = polytope_from_json(require(payload, "polytope"));
    const FunctionalSet d = functionals_for(payload, k.dim, flags);
    const std::string mode = require_string(payload, "mode");
    if (mode == "coords") {
        const RatVec z = vec_from_json(require(payload, "point"));
        const TomoCoords theta = tomo_coords(z, k, d);
        Json thetas = Json::array();
        for (const auto& t : theta.thetas) thetas.push_back(rat_to_json(t));
        return Json{{"theta", thetas}};
    }
    if (mode == "reconstruct") {
        TomoCoords theta;
        for (const auto& t : require(payload, "theta")) theta.thetas.push_back(rat_from_json(t));
        return Json{{"point", vec_to_json(tomo_reconstruct(k, theta, d))}};
    }
    throw SchemaError("tomo mode must be 'coords' or 'reconstruct'");
}

Json selection_to_json(const Selection& sel) {
    Json out;
    Json thetas = Json::array();
    for (const auto& t : sel.theta.thetas) thetas.push_back(rat_to_json(t));
    out["theta"] = thetas;
    if (const auto* bt = std::get_if<BasisTable>(&sel.impl)) {
        Json table = Json::array();
        for (std::size_t i = 0; i < bt->values.size(); ++i)
            table.push_back(Json{{"generator", vec_to_json(bt->domain.generators[i])},
                                 {"value", vec_to_json(bt->values[i])}});
        out["kind"] = "basis-table";
        out["table"] = table;
    } else if (std::holds_alternative<TomoSelection>(sel.impl)) {
        out["kind"] = "tomo";
    } else if (const auto* bc = std::get_if<Barycentric>(&sel.impl)) {
        Json choices = Json::array();
        for (const auto& c : bc->choices) choices.push_back(vec_to_json(c));
        out["kind"] = "barycentric";
        out["choices"] = choices;
    }
    return out;
}

Json run_select(const Json& payload, const RunFlags& flags) {
    const SetValuedMap a = map_from_json(require(payload, "map"));
    const RatVec x = vec_from_json(require(payload, "x"));
    const RatVec y = vec_from_json(require(payload, "y"));
    const FunctionalSet d = functionals_for(payload, a.space.dim, flags);
    const Selection sel = linear_selection_through(a, x, y, d);
    Json out = selection_to_json(sel);
    if (payload.contains("evaluate_at")) {
        Json probes = Json::array();
        for (const auto& item : payload["evaluate_at"]) {
            const RatVec z = vec_from_json(item);
            probes.push_back(
                Json{{"x", vec_to_json(z)}, {"value", vec_to_json(sel.evaluate(z))}});
        }
        out["probes"] = probes;
    }
    return out;
}

Json run_submap(const Json& payload, const RunFlags& flags) {
    if (payload.contains("fixture") &&
        payload["fixture"].get<std::string>() == "square-base-cone-6-maps") {
        unsigned trials = 10000;
        if (payload.contains("trials")) trials = payload["trials"].get<unsigned>();
        const auto survivors =
            fixtures::enumerate_superlinear_boolean_maps(trials, flags.seed);
        Json list = Json::array();
        for (const auto& values : survivors) {
            Json entry;
            for (const auto& [region, v] : values) entry[region] = v;
            list.push_back(entry);
        }
        return Json{{"count", survivors.size()}, {"survivors", list}, {"trials", trials}};
    }

    const SetValuedMap t = map_from_json(require(payload, "map"));
    unsigned check_trials = 0;
    if (payload.contains("check_trials"))
        check_trials = payload["check_trials"].get<unsigned>();
    const SubmapReport report =
        greatest_linear_submap(t, flags.depth, check_trials, flags.seed);

    Json out{{"exact", report.exact}};
    if (!report.exact) out["depth"] = report.depth;
    if (t.is_boolean()) {
        const auto& br = std::get<BooleanRegion>(report.map.impl);
        Json values;
        for (const auto& [region, v] : br.values) values[region] = v;
        out["values"] = values;
        Json witnesses;
        for (const auto& [region, parts] : report.zero_witnesses) {
            Json list = Json::array();
            for (const auto& p : parts) list.push_back(vec_to_json(p));
            witnesses[region] = list;
        }
        out["zero_witnesses"] = witnesses;
        out["not_refuted"] = report.not_refuted;
        out["trials"] = report.trials;
    } else if (report.map.is_basis_linear()) {
        const auto& bl = std::get<BasisLinear>(report.map.impl);
        Json table = Json::array();
        for (std::size_t i = 0; i < bl.values.size(); ++i)
            table.push_back(
                Json{{"generator", vec_to_json(report.map.domain.generators[i])},
                     {"value", polytope_to_json(bl.values[i])}});
        out["basis_values"] = table;
    }
    if (payload.contains("evaluate_at")) {
        Json probes = Json::array();
        for (const auto& item : payload["evaluate_at"]) {
            const RatVec z = vec_from_json(item);
            Json probe{{"x", vec_to_json(z)}};
            const MapValue v = evaluate(report.map, z);
            if (const auto* p = std::get_if<Polytope>(&v))
                probe["value"] = polytope_to_json(*p);
            else
                probe["value"] = std::get<int>(v);
            probes.push_back(probe);
        }
        out["probes"] = probes;
    }
    return out;
}

Json farkas_to_json(const InfeasibilityCertificate& c) {
    return Json{{"eq_mult", vec_to_json(c.eq_mult)},
                {"ineq_mult", vec_to_json(c.ineq_mult)}};
}

Json run_riesz(const Json& payload, const RunFlags&) {
    std::vector<RatVec> xs, ys;
    const bool fixture = payload.contains("fixture");
    if (fixture) {
        if (payload["fixture"].get<std::string>() != "square-base-riesz-failure")
            throw SchemaError("unknown riesz fixture");
        const auto inst = fixtures::square_base_riesz_instance();
        xs = inst.xs;
        ys = inst.ys;
    } else {
        for (const auto& item : require(payload, "xs")) xs.push_back(vec_from_json(item));
        for (const auto& item : require(payload, "ys")) ys.push_back(vec_from_json(item));
    }

    if (fixture || payload.contains("region_cone")) {
        const auto sc = fixtures::square_base_cone();
        auto res = riesz_interpolate_regions(*sc, xs, ys);
        Json out{{"feasible", res.feasible}};
        if (res.feasible) {
            Json grid = Json::array();
            for (const auto& row : res.grid) {
                Json r = Json::array();
                for (const auto& cell : row) r.push_back(vec_to_json(cell));
                grid.push_back(r);
            }
            out["grid"] = grid;
            out["regions"] = res.grid_regions;
        } else {
            Json branches = Json::array();
            for (const auto& b : res.branches) {
                Json entry{{"assignment", b.assignment}};
                if (b.weak_infeasible) {
                    entry["kind"] = "farkas";
                    entry["certificate"] = farkas_to_json(b.farkas);
                } else {
                    entry["kind"] = "margin-bound";
                    entry["bound"] = rat_to_json(b.bound);
                    entry["certificate"] = Json{{"eq_mult", vec_to_json(b.dual.eq_mult)},
                                                {"ineq_mult", vec_to_json(b.dual.ineq_mult)}};
                }
                branches.push_back(entry);
            }
            out["branches"] = branches;
            out["verified"] = verify_region_riesz(*sc, xs, ys, res.branches);
        }
        return out;
    }

    const Cone c = cone_from_json(require(payload, "cone"));
    auto res = riesz_interpolate(c, xs, ys);
    Json out{{"feasible", res.feasible}, {"cone", cone_to_json(c)}};
    if (res.feasible) {
        Json grid = Json::array();
        for (const auto& row : res.grid) {
            Json r = Json::array();
            for (const auto& cell : row) r.push_back(vec_to_json(cell));
            grid.push_back(r);
        }
        out["grid"] = grid;
    } else if (res.certificate) {
        out["certificate"] = farkas_to_json(*res.certificate);
        out["verified"] = verify_riesz_certificate(c, xs, ys, *res.certificate);
    }
    return out;
}

Json run_simplex(const Json& payload, const RunFlags&) {
    if (payload.contains("cone")) {
        const Cone c = cone_from_json(payload["cone"]);
        Json out{{"cone", cone_to_json(c)}, {"pointed", is_pointed(c)}};
        if (out["pointed"].get<bool>()) out["has_rdp"] = has_rdp(c);
        return out;
    }
    const Polytope k = polytope_from_json(require(payload, "polytope"));
    return Json{{"is_simplex", is_simplex(k)},
                {"vertices", polytope_to_json(k)["vertices"]},
                {"affine_dim", affine_dim(k)}};
}

Json run_envelope(const Json& payload, const RunFlags&) {
    Polytope k;
    std::vector<Rat> values;
    if (payload.contains("fixture")) {
        if (payload["fixture"].get<std::string>() != "square-envelope")
            throw SchemaError("unknown envelope fixture");
        auto f = fixtures::square_envelope_fixture();
        k = f.square;
        values = f.vertex_values;
    } else {
        k = polytope_from_json(require(payload, "polytope"));
        for (const auto& item : require(payload, "vertex_values"))
            values.push_back(rat_from_json(item));
    }
    const RatVec x = vec_from_json(require(payload, "x"));
    return Json{{"value", rat_to_json(concave_envelope_eval(k, values, x))}};
}

Json run_right_inverse(const Json& payload, const RunFlags&) {
    RightInverseProblem p;
    p.matrix = matrix_from_json(require(payload, "matrix"));
    p.bound = rat_from_json(require(payload, "C"));
    if (payload.contains("preserve")) p.preserve = vec_from_json(payload["preserve"]);

    if (p.preserve) {
        auto res = right_inverse_through(p);
        Json out{{"possible", res.possible}};
        if (res.possible) {
            out["matrix"] = matrix_to_json(res.inverse.matrix);
            out["norm"] = rat_to_json(res.inverse.norm);
        } else if (res.certificate == ThroughCertificate::NormObstruction) {
            out["certificate"] = Json{{"kind", "norm-obstruction"},
                                      {"z_norm", rat_to_json(res.z_norm)},
                                      {"image_bound", rat_to_json(res.image_bound)}};
        } else {
            out["certificate"] =
                Json{{"kind", "infeasible-decomposition"},
                     {"farkas", farkas_to_json(res.farkas)},
                     {"verified", verify_through_certificate(p, res.farkas)}};
        }
        return out;
    }

    std::optional<TomoCoords> theta;
    if (payload.contains("theta")) {
        TomoCoords t;
        for (const auto& item : payload["theta"]) t.thetas.push_back(rat_from_json(item));
        theta = t;
    }
    auto inv = right_inverse(p, theta);
    return Json{{"matrix", matrix_to_json(inv.matrix)}, {"norm", rat_to_json(inv.norm)}};
}

Json run_nesting(const Json& payload, const RunFlags&) {
    std::vector<std::vector<RatVec>> nodes;
    for (const auto& level : require(payload, "nodes")) {
        std::vector<RatVec> l;
        for (const auto& item : level) l.push_back(vec_from_json(item));
        nodes.push_back(std::move(l));
    }
    const NestingBasis basis = make_nesting_basis(nodes);
    const RatVec y0 = vec_from_json(require(payload, "y0"));
    const std::string rule_name = require_string(payload, "split_rule");
    SplitRule rule;
    if (rule_name == "leftmost")
        rule = SplitRule::Leftmost;
    else if (rule_name == "midpoint")
        rule = SplitRule::Midpoint;
    else
        throw SchemaError("split_rule must be 'leftmost' or 'midpoint'");

    std::function<Polytope(std::size_t, std::size_t)> values;
    if (payload.contains("values")) {
        auto table = std::make_shared<std::vector<std::vector<Polytope>>>();
        for (const auto& level : payload["values"]) {
            std::vector<Polytope> l;
            for (const auto& item : level) l.push_back(polytope_from_json(item));
            table->push_back(std::move(l));
        }
        values = [table](std::size_t n, std::size_t k) { return table->at(n).at(k); };
    } else if (payload.contains("mass_intervals") &&
               payload["mass_intervals"].get<bool>()) {
        values = [](std::size_t n, std::size_t) {
            return canonicalize({{Rat(0)}, {Rat(1, 1L << n)}});
        };
    } else {
        throw SchemaError("nesting needs 'values' or 'mass_intervals'");
    }

    const Selection sel = nesting_selection(basis, values, y0, rule);
    Json table = Json::array();
    for (const auto& level : node_table(sel)) {
        Json l = Json::array();
        for (const auto& v : level) l.push_back(vec_to_json(v));
        table.push_back(l);
    }
    return Json{{"table", table}};
}

}  // namespace

Json fixture_manifest_json() {
    Json out = Json::array();
    for (const auto& [name, description] : fixtures::fixture_manifest())
        out.push_back(Json{{"name", name}, {"description", description}});
    return Json{{"fixtures", out}};
}

Json run_problem(const Json& problem, const RunFlags& flags) {
    reject_floats(problem);
    if (!problem.is_object()) throw SchemaError("problem must be an object");
    const int version = require(problem, "schema_version").get<int>();
    if (version != 1) throw SchemaError("unsupported schema_version");
    const std::string kind = require_string(problem, "kind");
    const Json& payload = require(problem, "payload");

    Json result;
    if (kind == "tomo")
        result = run_tomo(payload, flags);
    else if (kind == "select")
        result = run_select(payload, flags);
    else if (kind == "submap")
        result = run_submap(payload, flags);
    else if (kind == "riesz")
        result = run_riesz(payload, flags);
    else if (kind == "simplex")
        result = run_simplex(payload, flags);
    else if (kind == "envelope")
        result = run_envelope(payload, flags);
    else if (kind == "right-inverse")
        result = run_right_inverse(payload, flags);
    else if (kind == "nesting")
        result = run_nesting(payload, flags);
    else
        throw SchemaError("unknown kind: " + kind);

    return Json{{"status", "ok"},
                {"result", result},
                {"provenance", Json{{"seed", flags.seed},
                                    {"depth", flags.depth},
                                    {"tool_version", kToolVersion}}}};
}

}  // namespace linsel
