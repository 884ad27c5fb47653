#ifndef LINSEL_FIXTURES_HPP
#define LINSEL_FIXTURES_HPP

#include "linsel/svmap.hpp"

namespace linsel {
namespace fixtures {

// ---------------------------------------------------------------------------
// The square-base cone: points (x, y, z) with either x = 0, 0 <= y <= z, or
// 0 < x < z and 0 < y < z.  Not closed; its five regions are scale-invariant
// and the region union is closed under addition.
//   apex       (0,0,0)
//   edge-ray   x = y = 0, z > 0
//   diag-ray   x = 0, y = z > 0
//   wedge      x = 0, 0 < y < z
//   interior   0 < x < z, 0 < y < z
// ---------------------------------------------------------------------------

extern const char* const kApex;
extern const char* const kEdgeRay;   // S1
extern const char* const kDiagRay;   // S2
extern const char* const kWedge;     // S0
extern const char* const kInterior;  // int S

std::shared_ptr<const SemilinearCone> square_base_cone();

// The one non-linear superlinear map of the fixture family: 1 on
// wedge + interior, 0 on the rays and apex.
SetValuedMap square_base_submap_fixture();

// All region-constant boolean assignments on the five regions, in a fixed
// deterministic order (region order as above, apex varying slowest).
std::vector<std::map<std::string, int>> all_boolean_assignments();

// Assignments surviving the seeded superlinearity sampler.
std::vector<std::map<std::string, int>> enumerate_superlinear_boolean_maps(
    unsigned trials, std::uint64_t seed);

// The bundled interpolation-failure instance on the square-base cone.
struct RieszInstance {
    std::vector<RatVec> xs;
    std::vector<RatVec> ys;
};
RieszInstance square_base_riesz_instance();

// ---------------------------------------------------------------------------
// Discontinuous tomographical selection fixture: the continuous map
// A(x) = segment [(0,0), (x,1)] on the real line, evaluated exactly.
// ---------------------------------------------------------------------------

SetValuedMap segment_family_map();

// ---------------------------------------------------------------------------
// Concave-envelope fixture on the unit square: |x + y - 1| sampled at the
// vertices, in canonical vertex order.
// ---------------------------------------------------------------------------

struct EnvelopeFixture {
    Polytope square;
    std::vector<Rat> vertex_values;
};
EnvelopeFixture square_envelope_fixture();

// ---------------------------------------------------------------------------
// Right-inverse worked matrices.
// ---------------------------------------------------------------------------

struct NamedMatrix {
    std::string name;
    RatMat matrix;
};
std::vector<NamedMatrix> right_inverse_matrices();

// Manifest of bundled fixtures: stable name plus one-line description.
std::vector<std::pair<std::string, std::string>> fixture_manifest();

}  // namespace fixtures
}  // namespace linsel

#endif
