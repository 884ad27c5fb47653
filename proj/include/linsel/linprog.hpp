#ifndef LINSEL_LINPROG_HPP
#define LINSEL_LINPROG_HPP

#include "linsel/linalg.hpp"

#include <optional>
#include <vector>

namespace linsel {

class MalformedProgram : public std::runtime_error {
  public:
    explicit MalformedProgram(const std::string& what) : std::runtime_error(what) {}
};

// Rows are (coeffs, bound); inequalities mean coeffs . x >= bound.  Variables
// listed in `nonneg` are constrained to be >= 0, all others are free.
struct LinearProgram {
    std::size_t num_vars = 0;
    std::optional<RatVec> objective;
    std::vector<std::pair<RatVec, Rat>> equalities;
    std::vector<std::pair<RatVec, Rat>> inequalities;
    std::vector<std::size_t> nonneg;

    void require_well_formed() const;
};

// Farkas-style refutation of feasibility.  With g = sum of multiplied rows
// and beta = same combination of bounds, every point satisfying the sign
// constraints has g . x <= 0, yet beta > 0.  Inequality multipliers are
// nonnegative; equality multipliers are free.
struct InfeasibilityCertificate {
    RatVec eq_mult;
    RatVec ineq_mult;
};

bool certificate_refutes(const LinearProgram& lp, const InfeasibilityCertificate& cert);

enum class LpStatus { Feasible, Optimal, Infeasible, Unbounded };
enum class Sense { Minimize, Maximize };

// Dual multipliers proving an objective bound.  For Minimize the aggregated
// row combination must be dominated by the objective (ineq_mult >= 0) and
// proves objective >= bound; for Maximize it dominates the objective
// (ineq_mult <= 0) and proves objective <= bound.
struct DualCertificate {
    RatVec eq_mult;
    RatVec ineq_mult;
};

// The bound the certificate proves, or nullopt when the multipliers do not
// form a valid certificate for this program and sense.
std::optional<Rat> dual_bound(const LinearProgram& lp, Sense sense,
                              const DualCertificate& cert);

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    RatVec point;   // valid for Feasible / Optimal
    Rat value = 0;  // valid for Optimal
    std::optional<InfeasibilityCertificate> certificate;
    std::optional<DualCertificate> dual;  // attached to Optimal results
};

// Phase-I simplex over exact rationals (Bland's rule).  Returned points
// satisfy every constraint exactly; Infeasible results carry a certificate
// that certificate_refutes accepts.
LpResult solve_feasibility(const LinearProgram& lp);

// Two-phase simplex; requires lp.objective.  Deterministic: Bland's entering
// rule with smallest-basic-index tie break on leaving variables.
LpResult optimize(const LinearProgram& lp, Sense sense);

}  // namespace linsel

#endif
