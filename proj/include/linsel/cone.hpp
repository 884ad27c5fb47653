#ifndef LINSEL_CONE_HPP
#define LINSEL_CONE_HPP

#include "linsel/polytope.hpp"

#include <optional>

namespace linsel {

class NotInCone : public std::runtime_error {
  public:
    explicit NotInCone(const std::string& what) : std::runtime_error(what) {}
};
class NoConeBasis : public std::runtime_error {
  public:
    explicit NoConeBasis(const std::string& what) : std::runtime_error(what) {}
};
class SumMismatch : public std::runtime_error {
  public:
    explicit SumMismatch(const std::string& what) : std::runtime_error(what) {}
};
class NotPointed : public std::runtime_error {
  public:
    explicit NotPointed(const std::string& what) : std::runtime_error(what) {}
};
class NoBase : public std::runtime_error {
  public:
    explicit NoBase(const std::string& what) : std::runtime_error(what) {}
};

// Finitely generated convex cone.  Generators are stored as a deterministic
// irredundant set of extreme-ray representatives: each generator is scaled by
// a positive rational so its first nonzero coordinate has absolute value 1,
// conically redundant generators are pruned, and the list is lex-sorted.
// basis_flag records linear independence of the stored generators (cone-basis).
struct Cone {
    std::vector<RatVec> generators;
    std::size_t dim = 0;
    bool basis_flag = false;

    bool operator==(const Cone& other) const {
        return dim == other.dim && generators == other.generators;
    }
};

Cone make_cone(const std::vector<RatVec>& generators, std::size_t dim);

struct ConeCoords {
    RatVec alpha;  // aligned with the cone's stored generators
};

bool membership(const Cone& c, const RatVec& x);
bool is_pointed(const Cone& c);

// Unique nonnegative coordinates over a cone-basis.
ConeCoords coords(const Cone& c, const RatVec& x);

struct RieszResult {
    bool feasible = false;
    // grid[j][k] with row sums xs[j] and column sums ys[k]
    std::vector<std::vector<RatVec>> grid;
    std::optional<InfeasibilityCertificate> certificate;
};

// Common-refinement grid for two decompositions of the same point, or an
// infeasibility certificate witnessing failure of the interpolation property
// on this instance.  Cone-basis domains use the closed form
// z_jk = sum_b alpha_b(x_j) alpha_b(y_k) / alpha_b(z) * b  (0/0 = 0).
RieszResult riesz_interpolate(const Cone& c, const std::vector<RatVec>& xs,
                              const std::vector<RatVec>& ys);

// Rebuilds the feasibility program behind riesz_interpolate and checks the
// certificate against it.
bool verify_riesz_certificate(const Cone& c, const std::vector<RatVec>& xs,
                              const std::vector<RatVec>& ys,
                              const InfeasibilityCertificate& cert);

// Riesz decomposition property of a pointed finitely generated cone: holds
// iff the extreme rays are linearly independent (simplicial cone).
bool has_rdp(const Cone& c);

// The intrinsic-order interval [0, x] = C cap (x - C) as a polytope.
// Brute-force facet enumeration; dim <= 4.
Polytope order_interval(const Cone& c, const RatVec& x);

struct Suspension {
    Polytope base;             // in dimension d
    std::size_t ambient_dim;   // d + 1
    Cone cone() const;         // generators (1, v) per base vertex
};

Suspension suspend(const Polytope& k);

struct BaseResult {
    Polytope base;
    Functional positive_functional;  // g with g > 0 on every generator, base = {g = 1}
};

// Cross-section {x in C : g(x) = 1} for a discovered strictly positive g.
BaseResult base_of(const Cone& c);

// Facet inequalities of the cone within its linear span, plus span equalities.
HRep cone_hrep(const Cone& c);

}  // namespace linsel

#endif
