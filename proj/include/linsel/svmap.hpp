#ifndef LINSEL_SVMAP_HPP
#define LINSEL_SVMAP_HPP

#include "linsel/cone.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <variant>

namespace linsel {

class NotInDomain : public std::runtime_error {
  public:
    explicit NotInDomain(const std::string& what) : std::runtime_error(what) {}
};
class NoRepresentation : public std::runtime_error {
  public:
    explicit NoRepresentation(const std::string& what) : std::runtime_error(what) {}
};
class NotSuperlinear : public std::runtime_error {
  public:
    explicit NotSuperlinear(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Region-described semilinear cones.
//
// A cone given as a disjoint union of finitely many regions, each carved out
// by exact linear equalities and weak/strict inequalities.  This carries the
// non-closed cones that finitely generated (hence closed) Cone values cannot
// express; membership and classification are exact.
// ---------------------------------------------------------------------------

struct Region {
    std::string name;
    std::vector<std::pair<RatVec, Rat>> eq;      // a.p  = b
    std::vector<std::pair<RatVec, Rat>> weak;    // a.p >= b
    std::vector<std::pair<RatVec, Rat>> strict;  // a.p  > b
    bool holds(const RatVec& p) const;
};

struct SemilinearCone {
    std::string name;
    std::size_t dim = 0;
    std::vector<Region> regions;
    Cone closure;
    std::optional<std::string> apex_region;
    // True when every region lies in the nonnegative orthant; enables the
    // sign-based pruning of region assignments in the interpolation search.
    bool nonnegative_orthant = false;
    std::function<RatVec(const std::string&, std::mt19937_64&)> sample_region;

    std::optional<std::string> classify(const RatVec& p) const;
    const Region& region(const std::string& name) const;
};

// Region indices admissible for each grid cell, pruned by the sound sign
// filter: on nonnegative-orthant cones a zero row/column sum coordinate
// forces that coordinate to vanish on every cell of the row/column, ruling
// out regions that demand it strictly positive.  Shared by the search and
// its verifier.
std::vector<std::vector<std::size_t>> riesz_allowed_regions(
    const SemilinearCone& sc, const std::vector<RatVec>& xs,
    const std::vector<RatVec>& ys);

// Exact interpolation-property instance on a region-described cone: find a
// grid z_jk inside the (possibly non-closed) cone with row sums xs and column
// sums ys.  Searches one linear program per assignment of regions to cells;
// strict rows are handled by maximizing a shared margin variable.
struct RegionBranch {
    std::vector<std::string> assignment;  // region per cell, row-major
    bool weak_infeasible = false;
    InfeasibilityCertificate farkas;  // when the weak relaxation is infeasible
    DualCertificate dual;             // otherwise: proves margin <= bound <= 0
    Rat bound = 0;
};

struct RegionRieszResult {
    bool feasible = false;
    std::vector<std::vector<RatVec>> grid;
    std::vector<std::string> grid_regions;     // classification per cell, row-major
    std::vector<RegionBranch> branches;        // refutations when infeasible
};

RegionRieszResult riesz_interpolate_regions(const SemilinearCone& sc,
                                            const std::vector<RatVec>& xs,
                                            const std::vector<RatVec>& ys);

// Re-checks a refutation: the branch list must cover every assignment of
// regions to grid cells exactly once and every certificate must verify
// against its reconstructed program.
bool verify_region_riesz(const SemilinearCone& sc, const std::vector<RatVec>& xs,
                         const std::vector<RatVec>& ys,
                         const std::vector<RegionBranch>& branches);

// ---------------------------------------------------------------------------
// Set-valued maps.
// ---------------------------------------------------------------------------

enum class SpaceKind { PolytopeSpace, BooleanSpace };

// polytope-space: sum = Minkowski sum, order = inclusion, inf = intersection.
// boolean-space: values in {0,1}, sum = max, order = numeric, inf = min.
struct ValueSpace {
    SpaceKind kind = SpaceKind::PolytopeSpace;
    std::size_t dim = 0;  // ambient dimension of polytope values
};

struct BasisLinear {
    std::vector<Polytope> values;  // aligned with the domain's generators
};

struct SampledSuperlinear {
    std::vector<std::pair<RatVec, Polytope>> samples;
};

struct BooleanRegion {
    std::shared_ptr<const SemilinearCone> cone;
    std::map<std::string, int> values;  // region name -> 0/1
};

struct CustomMap {
    std::function<Polytope(const RatVec&)> eval;
    std::string label;
};

struct SetValuedMap {
    Cone domain;
    ValueSpace space;
    std::variant<BasisLinear, SampledSuperlinear, BooleanRegion, CustomMap> impl;

    bool is_basis_linear() const { return std::holds_alternative<BasisLinear>(impl); }
    bool is_sampled() const { return std::holds_alternative<SampledSuperlinear>(impl); }
    bool is_boolean() const { return std::holds_alternative<BooleanRegion>(impl); }
};

SetValuedMap make_basis_linear(const Cone& domain, std::vector<Polytope> values);
SetValuedMap make_sampled(std::vector<std::pair<RatVec, Polytope>> samples,
                          std::size_t domain_dim);
SetValuedMap make_boolean(std::shared_ptr<const SemilinearCone> cone,
                          std::map<std::string, int> values);
SetValuedMap make_custom(const Cone& domain, std::size_t value_dim,
                         std::function<Polytope(const RatVec&)> eval, std::string label);

using MapValue = std::variant<Polytope, int>;

MapValue evaluate(const SetValuedMap& t, const RatVec& x);
Polytope evaluate_poly(const SetValuedMap& t, const RatVec& x);
int evaluate_bool(const SetValuedMap& t, const RatVec& x);

// Vertices of Lambda(x) = { lambda >= 0 : sum lambda_i x_i = x } for the
// sample points of a SampledSuperlinear map, as basic feasible solutions.
std::vector<RatVec> decomposition_vertices(const std::vector<RatVec>& points,
                                           const RatVec& x);

// Extreme rays of the domain plus nested cross-section grids at resolutions
// 1/1 .. 1/depth; the part family behind depth-limited decomposition
// searches.  Grows with depth, which is what makes the searches monotone.
std::vector<RatVec> candidate_directions(const Cone& domain, unsigned depth);

// ---------------------------------------------------------------------------
// Randomized law checks.  Seeded and deterministic; Pass is evidence, not
// proof.  For maps on monoid domains (a declared apex region) superlinearity
// includes preservation of the additive identity, which is what makes the
// boolean fixture enumeration match its hand count.
// ---------------------------------------------------------------------------

struct Refutation {
    RatVec x, y;
    std::string law;  // "superadditivity", "homogeneity", "additivity", "identity"
};

struct CheckResult {
    bool pass = true;
    std::optional<Refutation> refutation;
};

Rat random_rat(std::mt19937_64& rng, int max_num = 4, int max_den = 3);
RatVec random_cone_point(const Cone& c, std::mt19937_64& rng);

CheckResult check_superlinear(const SetValuedMap& t, unsigned trials, std::uint64_t seed);
CheckResult check_linear(const SetValuedMap& t, unsigned trials, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Greatest linear / affine submaps.
// ---------------------------------------------------------------------------

struct SubmapReport {
    SetValuedMap map;
    bool exact = false;
    unsigned depth = 0;     // search depth when not exact
    unsigned trials = 0;    // sampling budget used for boolean 1-claims
    // Boolean-region reports: witness decomposition per region claimed 0,
    // and the regions whose claim of 1 was not refuted at depth/trials.
    std::map<std::string, std::vector<RatVec>> zero_witnesses;
    std::vector<std::string> not_refuted;
};

SubmapReport greatest_linear_submap(const SetValuedMap& t, unsigned depth,
                                    unsigned check_trials = 0, std::uint64_t seed = 1);

// Convex map on K handed over as its homogeneous extension on suspend(K):
// computes the greatest linear submap of the suspension and reads the affine
// submap off the height-1 slice.
struct AffineSubmapReport {
    SubmapReport suspension;
    Polytope base;
    Polytope eval(const RatVec& x) const;  // value at x in K
};

AffineSubmapReport greatest_affine_submap(const SetValuedMap& t_sus, const Polytope& k,
                                          unsigned depth, unsigned check_trials = 0,
                                          std::uint64_t seed = 1);

// Homogeneous lift of vertex/sample data of a convex map on K to suspend(K):
// sample ((1, x_i), P_i) per data point.
SetValuedMap lift_to_suspension(const Polytope& k,
                                const std::vector<std::pair<RatVec, Polytope>>& data,
                                std::size_t value_dim);

}  // namespace linsel

#endif
