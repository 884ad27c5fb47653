#include "linsel/fixtures.hpp"

namespace linsel {
namespace fixtures {

const char* const kApex = "apex";
const char* const kEdgeRay = "edge-ray";
const char* const kDiagRay = "diag-ray";
const char* const kWedge = "wedge";
const char* const kInterior = "interior";

namespace {

RatVec unit(std::size_t i) {
    RatVec v = zero_vec(3);
    v[i] = 1;
    return v;
}

Rat positive_rat(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(1, 8);
    std::uniform_int_distribution<int> den(1, 4);
    return Rat(num(rng), den(rng));
}

// A random rational strictly between 0 and hi.
Rat strictly_between(const Rat& hi, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(1, 15);
    return hi * Rat(num(rng), 16);
}

std::shared_ptr<const SemilinearCone> build_square_base_cone() {
    auto sc = std::make_shared<SemilinearCone>();
    sc->name = "square-base-cone";
    sc->dim = 3;
    const RatVec ex = unit(0), ey = unit(1), ez = unit(2);
    const RatVec z_minus_x = {Rat(-1), Rat(0), Rat(1)};
    const RatVec z_minus_y = {Rat(0), Rat(-1), Rat(1)};

    Region apex{kApex,
                {{ex, Rat(0)}, {ey, Rat(0)}, {ez, Rat(0)}},
                {},
                {}};
    Region edge{kEdgeRay,
                {{ex, Rat(0)}, {ey, Rat(0)}},
                {},
                {{ez, Rat(0)}}};
    Region diag{kDiagRay,
                {{ex, Rat(0)}, {{Rat(0), Rat(1), Rat(-1)}, Rat(0)}},
                {},
                {{ez, Rat(0)}}};
    Region wedge{kWedge,
                 {{ex, Rat(0)}},
                 {},
                 {{ey, Rat(0)}, {z_minus_y, Rat(0)}}};
    Region interior{kInterior,
                    {},
                    {},
                    {{ex, Rat(0)}, {z_minus_x, Rat(0)}, {ey, Rat(0)}, {z_minus_y, Rat(0)}}};
    sc->regions = {apex, edge, diag, wedge, interior};
    sc->apex_region = kApex;
    sc->nonnegative_orthant = true;
    sc->closure = make_cone({{Rat(0), Rat(0), Rat(1)},
                             {Rat(0), Rat(1), Rat(1)},
                             {Rat(1), Rat(0), Rat(1)},
                             {Rat(1), Rat(1), Rat(1)}},
                            3);
    sc->sample_region = [](const std::string& region, std::mt19937_64& rng) -> RatVec {
        if (region == kApex) return zero_vec(3);
        const Rat z = positive_rat(rng);
        if (region == kEdgeRay) return {Rat(0), Rat(0), z};
        if (region == kDiagRay) return {Rat(0), z, z};
        if (region == kWedge) return {Rat(0), strictly_between(z, rng), z};
        if (region == kInterior)
            return {strictly_between(z, rng), strictly_between(z, rng), z};
        throw std::out_of_range("unknown region: " + region);
    };
    return sc;
}

}  // namespace

std::shared_ptr<const SemilinearCone> square_base_cone() {
    static const std::shared_ptr<const SemilinearCone> instance = build_square_base_cone();
    return instance;
}

SetValuedMap square_base_submap_fixture() {
    return make_boolean(square_base_cone(), {{kApex, 0},
                                             {kEdgeRay, 0},
                                             {kDiagRay, 0},
                                             {kWedge, 1},
                                             {kInterior, 1}});
}

std::vector<std::map<std::string, int>> all_boolean_assignments() {
    const auto sc = square_base_cone();
    std::vector<std::map<std::string, int>> out;
    const std::size_t n = sc->regions.size();
    for (std::size_t bits = 0; bits < (1u << n); ++bits) {
        std::map<std::string, int> values;
        for (std::size_t i = 0; i < n; ++i)
            values[sc->regions[i].name] = static_cast<int>((bits >> i) & 1u);
        out.push_back(std::move(values));
    }
    return out;
}

std::vector<std::map<std::string, int>> enumerate_superlinear_boolean_maps(
    unsigned trials, std::uint64_t seed) {
    std::vector<std::map<std::string, int>> survivors;
    for (auto& values : all_boolean_assignments()) {
        const SetValuedMap t = make_boolean(square_base_cone(), values);
        if (check_superlinear(t, trials, seed).pass) survivors.push_back(values);
    }
    return survivors;
}

RieszInstance square_base_riesz_instance() {
    return RieszInstance{
        {{Rat(0), Rat(1, 2), Rat(1)}, {Rat(1, 2), Rat(0), Rat(1)}},
        {{Rat(1, 2), Rat(1, 2), Rat(1)}, {Rat(0), Rat(0), Rat(1)}}};
}

SetValuedMap segment_family_map() {
    const Cone line = make_cone({{Rat(1)}, {Rat(-1)}}, 1);
    auto eval = [](const RatVec& x) -> Polytope {
        return canonicalize({{Rat(0), Rat(0)}, {x[0], Rat(1)}});
    };
    return make_custom(line, 2, eval, "segment-family");
}

EnvelopeFixture square_envelope_fixture() {
    EnvelopeFixture f;
    f.square = canonicalize(
        {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(1)}});
    for (const auto& v : f.square.vertices) f.vertex_values.push_back(abs(v[0] + v[1] - 1));
    return f;
}

std::vector<NamedMatrix> right_inverse_matrices() {
    return {
        {"row-sum", {{Rat(1), Rat(1)}}},
        {"identity-2", {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}},
        {"shear", {{Rat(1), Rat(-1)}, {Rat(0), Rat(1)}}},
    };
}

std::vector<std::pair<std::string, std::string>> fixture_manifest() {
    return {
        {"square-base-cone-6-maps",
         "boolean maps on the five regions of the square-base cone; the seeded "
         "superlinearity sampler keeps exactly six"},
        {"square-base-greatest-submap",
         "the non-linear member of the family: 1 on wedge+interior, 0 on the rays; "
         "its greatest linear submap is 1 on the interior only"},
        {"square-base-riesz-failure",
         "two decompositions of the same point with no common refinement grid "
         "inside the non-closed cone"},
        {"discontinuous-tomo-selection",
         "segment family A(x) = [(0,0),(x,1)] on the line; the tomographical "
         "selection through (0,(0,0)) is discontinuous at 0"},
        {"square-envelope",
         "|x+y-1| sampled at the unit square's vertices; its concave envelope is "
         "not affine"},
        {"right-inverse-worked",
         "the worked right-inverse matrices [1 1], I2 and the shear [[1,-1],[0,1]]"},
    };
}

}  // namespace fixtures
}  // namespace linsel
