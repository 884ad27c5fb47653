#ifndef LINSEL_SELECTION_HPP
#define LINSEL_SELECTION_HPP

#include "linsel/svmap.hpp"

namespace linsel {

class NotExhaustive : public std::runtime_error {
  public:
    explicit NotExhaustive(const std::string& what) : std::runtime_error(what) {}
};
class PointNotInValue : public std::runtime_error {
  public:
    explicit PointNotInValue(const std::string& what) : std::runtime_error(what) {}
};
class NotLinear : public std::runtime_error {
  public:
    explicit NotLinear(const std::string& what) : std::runtime_error(what) {}
};
class NoSelection : public std::runtime_error {
  public:
    explicit NoSelection(const std::string& what) : std::runtime_error(what) {}
};
class NotSimplex : public std::runtime_error {
  public:
    explicit NotSimplex(const std::string& what) : std::runtime_error(what) {}
};
class ChoiceOutsideValue : public std::runtime_error {
  public:
    explicit ChoiceOutsideValue(const std::string& what) : std::runtime_error(what) {}
};
class InfeasibleSplit : public std::runtime_error {
  public:
    explicit InfeasibleSplit(const std::string& what) : std::runtime_error(what) {}
};

// Ordered functional list; exhaustive means the coefficient matrix has full
// column rank, so functional values identify points uniquely.
struct FunctionalSet {
    std::vector<Functional> functionals;
    std::size_t dim = 0;
};

FunctionalSet make_functional_set(std::vector<Functional> functionals, std::size_t dim);
FunctionalSet coordinate_functionals(std::size_t dim);

struct TomoCoords {
    std::vector<Rat> thetas;  // aligned with the functional order
};

// Iterated theta-values of z inside K along the functional list; 0/0 = 0.
TomoCoords tomo_coords(const RatVec& z, const Polytope& k, const FunctionalSet& d);

// Iterated sections collapse to a single point under an exhaustive set.
RatVec tomo_reconstruct(const Polytope& k, const TomoCoords& theta,
                        const FunctionalSet& d);

// x -> section(T(x), f, theta).  Materialized as BasisLinear when section and
// basis sums commute on seeded probes, otherwise returned lazily.
SetValuedMap section_map(const SetValuedMap& t, const Functional& f, const Rat& theta,
                         unsigned probes = 16, std::uint64_t seed = 3);

// ---------------------------------------------------------------------------
// Selections
// ---------------------------------------------------------------------------

struct BasisTable {
    Cone domain;
    std::vector<RatVec> values;  // one image point per generator
};

struct TomoSelection {
    std::function<Polytope(const RatVec&)> map_eval;
    TomoCoords theta;
    FunctionalSet functionals;
};

struct Barycentric {
    Polytope simplex;
    std::vector<RatVec> choices;  // per canonical vertex
};

struct NodeTable {
    // values[n][k] for the nesting-basis nodes
    std::vector<std::vector<RatVec>> values;
};

struct Selection {
    std::variant<BasisTable, TomoSelection, Barycentric, NodeTable> impl;
    TomoCoords theta;  // the coordinates that produced the selection, if any

    RatVec evaluate(const RatVec& x) const;
};

// Linear selection a of A with a(x) = y.  On cone-basis domains the result is
// a basis table: per-generator theta-transport when it reproduces y exactly,
// otherwise the lexicographically least exact decomposition of y over the
// generator values.  Elsewhere the raw theta-transport selection is returned;
// it passes through (x, y) but need not be additive (that is the point of the
// discontinuity fixture).  A sampled linearity check of A runs when
// lin_check_trials > 0.
Selection linear_selection_through(const SetValuedMap& a, const RatVec& x,
                                   const RatVec& y, const FunctionalSet& d,
                                   unsigned lin_check_trials = 0,
                                   std::uint64_t seed = 5);

enum class ExistsAnswer { Yes, No, Unknown };

struct ExistsResult {
    ExistsAnswer answer = ExistsAnswer::Unknown;
    std::vector<RatVec> witness;  // violating decomposition parts for No
    unsigned depth = 0;           // search depth behind an Unknown
};

// Does a linear selection of superlinear T pass through (x, y)?  Decided
// exactly on cone-basis domains by membership of y in sum alpha_b(x) T(b);
// bounded decomposition search elsewhere.
ExistsResult selection_exists_through(const SetValuedMap& t, const RatVec& x,
                                      const RatVec& y, unsigned depth);

// Affine counterpart through the suspension: T is handed over on suspend(K).
Selection affine_selection_through(const SetValuedMap& t_sus, const Polytope& k,
                                   const RatVec& x, const RatVec& y,
                                   const FunctionalSet& d);

// Affine interpolation of per-vertex choices over a simplex; validated
// against T (given on suspend(K)) when provided.
Selection barycentric_selection(const Polytope& k, const std::vector<RatVec>& choices,
                                const SetValuedMap* t_sus = nullptr);

// ---------------------------------------------------------------------------
// Nesting bases
// ---------------------------------------------------------------------------

struct NestingBasis {
    std::size_t depth = 0;
    std::vector<std::vector<RatVec>> nodes;  // nodes[n][k], 0 <= k < 2^n
};

// Validates the two structural laws: each node is the sum of its children,
// and distinct positions hold distinct vectors unless zero.
NestingBasis make_nesting_basis(std::vector<std::vector<RatVec>> nodes);

enum class SplitRule { Leftmost, Midpoint };

// Descends the dyadic tree splitting S(parent) into g + h with g in T(left),
// h in T(right); the rule picks the all-zero-theta or the all-half-theta
// point of the feasible split set.  node_values(n, k) supplies T(b_{n,k}).
Selection nesting_selection(const NestingBasis& basis,
                            const std::function<Polytope(std::size_t, std::size_t)>& node_values,
                            const RatVec& y0, SplitRule rule);

// Value table access for node-table selections.
const std::vector<std::vector<RatVec>>& node_table(const Selection& s);

// Evaluation of a node-table selection at a nonnegative combination of nodes.
struct NodeRef {
    std::size_t level = 0;
    std::size_t index = 0;
    Rat coeff = 0;
};
RatVec evaluate_node_combo(const Selection& s, const std::vector<NodeRef>& combo);

}  // namespace linsel

#endif
