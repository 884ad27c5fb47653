#ifndef LINSEL_POLYTOPE_HPP
#define LINSEL_POLYTOPE_HPP

#include "linsel/linprog.hpp"

#include <vector>

namespace linsel {

class EmptyInput : public std::runtime_error {
  public:
    explicit EmptyInput(const std::string& what) : std::runtime_error(what) {}
};
class NonpositiveScalar : public std::runtime_error {
  public:
    explicit NonpositiveScalar(const std::string& what) : std::runtime_error(what) {}
};
class PointOutside : public std::runtime_error {
  public:
    explicit PointOutside(const std::string& what) : std::runtime_error(what) {}
};
class ArityMismatch : public std::runtime_error {
  public:
    explicit ArityMismatch(const std::string& what) : std::runtime_error(what) {}
};
class DimensionBudget : public std::runtime_error {
  public:
    explicit DimensionBudget(const std::string& what) : std::runtime_error(what) {}
};

// Canonical vertex-representation polytope: every stored point is an extreme
// point of the hull and the list is sorted lexicographically.  Two polytopes
// are equal iff their canonical forms are identical.
struct Polytope {
    std::vector<RatVec> vertices;
    std::size_t dim = 0;

    bool operator==(const Polytope& other) const = default;
    bool is_singleton() const { return vertices.size() == 1; }
};

struct Functional {
    RatVec coeffs;
    Rat operator()(const RatVec& x) const { return dot(coeffs, x); }
};

struct SupportInterval {
    Rat low;   // L_f
    Rat high;  // R_f
    bool degenerate() const { return low == high; }
};

Polytope canonicalize(const std::vector<RatVec>& points);

// True iff p lies in the hull of `points` minus the point at `skip` (used by
// canonicalize and exposed for tests).
bool in_hull(const std::vector<RatVec>& points, const RatVec& p,
             std::size_t skip = static_cast<std::size_t>(-1));

SupportInterval support(const Polytope& k, const Functional& f);

// K cut by the hyperplane f = (1-theta) L_f + theta R_f.  A degenerate
// support interval returns K itself.
Polytope section(const Polytope& k, const Functional& f, const Rat& theta);

Polytope minkowski_sum(const Polytope& a, const Polytope& b);
Polytope scale(const Polytope& a, const Rat& lambda);
bool contains(const Polytope& k, const RatVec& p);

std::size_t affine_dim(const Polytope& k);
bool is_simplex(const Polytope& k);

// Barycentric coordinates of x over the vertices of a simplex; throws
// PointOutside when x is not in the simplex.
RatVec barycentric_coords(const Polytope& simplex, const RatVec& x);

// Value at x of the concave envelope of the vertex data: exact LP
// max sum(lambda_i w_i) over lambda >= 0, sum lambda = 1, sum lambda_i v_i = x.
Rat concave_envelope_eval(const Polytope& k, const std::vector<Rat>& vertex_values,
                          const RatVec& x);

// Halfspace form: eq rows a.x = b plus ineq rows a.x >= b.
struct HRep {
    std::vector<std::pair<RatVec, Rat>> equalities;
    std::vector<std::pair<RatVec, Rat>> inequalities;
    std::size_t dim = 0;
};

// Exact facet description; brute force over vertex subsets, intended for
// small dimension (<= 4) and modest vertex counts.
HRep to_hrep(const Polytope& k);

// Vertex enumeration of a bounded halfspace intersection (brute force over
// active sets).  Throws DimensionBudget when the instance is too large.
Polytope vertices_of_hrep(const HRep& h);

Polytope intersect(const Polytope& a, const Polytope& b);

}  // namespace linsel

#endif
