#ifndef LINSEL_RATIONAL_HPP
#define LINSEL_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace linsel {

// Exact rational scalar. GMP keeps values canonical (lowest terms, positive
// denominator) as long as they are constructed through arithmetic or the
// two-argument constructor; parse_rat below never uses the raw string
// constructor, which would skip canonicalization.
using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;  // row-major

class MalformedRational : public std::runtime_error {
  public:
    explicit MalformedRational(const std::string& what) : std::runtime_error(what) {}
};

// Accepts "p", "-p", "p/q" with integer p, q (q > 0 after normalization).
// Rejects anything else, in particular floating-point literals.
Rat parse_rat(const std::string& text);

std::string rat_to_string(const Rat& value);

}  // namespace linsel

#endif
