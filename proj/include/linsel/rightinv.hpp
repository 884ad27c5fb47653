#ifndef LINSEL_RIGHTINV_HPP
#define LINSEL_RIGHTINV_HPP

#include "linsel/selection.hpp"

namespace linsel {

class NotSurjective : public std::runtime_error {
  public:
    explicit NotSurjective(const std::string& what) : std::runtime_error(what) {}
};
class BoundTooSmall : public std::runtime_error {
  public:
    BoundTooSmall(const std::string& what, Rat min_constant)
        : std::runtime_error(what), min_constant(std::move(min_constant)) {}
    Rat min_constant;
};
class NegativeImage : public std::runtime_error {
  public:
    explicit NegativeImage(const std::string& what) : std::runtime_error(what) {}
};
class NotGenerating : public std::runtime_error {
  public:
    explicit NotGenerating(const std::string& what) : std::runtime_error(what) {}
};

struct RightInverseProblem {
    RatMat matrix;  // m x n, surjective
    Rat bound;      // C
    std::optional<RatVec> preserve;  // z with matrix * z >= 0 entrywise
};

struct RightInverse {
    RatMat matrix;  // n x m with T * M = I
    Rat norm;       // max column l1 norm; the l1->l1 operator norm
};

Rat l1_norm(const RatVec& x);

// max over j of min { |x|_1 : T x = e_j }; the smallest bound C for which
// every column set Phi(e_j) is nonempty.
Rat min_inverse_constant(const RatMat& t);

// Column j is the theta-guided point of Phi(e_j) = { x : T x = e_j,
// |x|_1 <= C } under coordinate functionals; all-zero theta by default, i.e.
// the lexicographic minimum.
RightInverse right_inverse(const RightInverseProblem& p,
                           const std::optional<TomoCoords>& theta = std::nullopt);

enum class ThroughCertificate { None, NormObstruction, Infeasibility };

struct ThroughResult {
    bool possible = false;
    RightInverse inverse;  // valid when possible
    ThroughCertificate certificate = ThroughCertificate::None;
    Rat z_norm = 0;        // |z|_1 for the norm obstruction
    Rat image_bound = 0;   // C * |T z|_1 for the norm obstruction
    InfeasibilityCertificate farkas;  // for the infeasibility certificate
};

// Decides whether a right inverse with norm <= C can preserve z, via the
// exact decomposition criterion z in sum_j (T z)_j Phi(e_j).
ThroughResult right_inverse_through(const RightInverseProblem& p);

// Rebuilds the decomposition program and checks an Infeasibility certificate.
bool verify_through_certificate(const RightInverseProblem& p,
                                const InfeasibilityCertificate& cert);

// Extension of a linear selection on a generating simplicial cone to the
// whole space: the unique matrix agreeing with the basis table.
RatMat extend_linear(const Selection& phi, std::size_t space_dim);

}  // namespace linsel

#endif
