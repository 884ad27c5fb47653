#ifndef LINSEL_LINALG_HPP
#define LINSEL_LINALG_HPP

#include "linsel/rational.hpp"

#include <optional>

namespace linsel {

class MixedDimensions : public std::runtime_error {
  public:
    explicit MixedDimensions(const std::string& what) : std::runtime_error(what) {}
};

RatVec vec_add(const RatVec& a, const RatVec& b);
RatVec vec_sub(const RatVec& a, const RatVec& b);
RatVec vec_scale(const Rat& lambda, const RatVec& a);
Rat dot(const RatVec& a, const RatVec& b);
bool is_zero(const RatVec& a);
RatVec zero_vec(std::size_t n);

// Strict lexicographic order; used everywhere canonical order matters.
bool lex_less(const RatVec& a, const RatVec& b);

RatMat identity(std::size_t n);
RatMat transpose(const RatMat& a);
RatVec mat_vec(const RatMat& a, const RatVec& x);
RatMat mat_mul(const RatMat& a, const RatMat& b);

std::size_t rank(RatMat a);

// Solutions of A x = b.  `solution` is empty when the system is inconsistent;
// `kernel` spans the solution space of A x = 0, so the solution is unique iff
// kernel is empty.
struct LinearSolve {
    std::optional<RatVec> solution;
    std::vector<RatVec> kernel;
};
LinearSolve solve_linear(RatMat a, RatVec b);

// Inverse of a square matrix; empty when singular.
std::optional<RatMat> invert(const RatMat& a);

}  // namespace linsel

#endif
