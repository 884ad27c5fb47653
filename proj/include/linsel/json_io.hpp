#ifndef LINSEL_JSON_IO_HPP
#define LINSEL_JSON_IO_HPP

#include "linsel/fixtures.hpp"
#include "linsel/rightinv.hpp"
#include "linsel/selection.hpp"

#include "json.hpp"

#include <string>

namespace linsel {

inline constexpr const char* kToolVersion = "0.3.0";

using Json = nlohmann::json;

class SchemaError : public std::runtime_error {
  public:
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

// All numeric I/O is exact-rational text: integers or "p/q" strings.  Any
// floating-point literal anywhere in a document is rejected.
Json rat_to_json(const Rat& value);
Rat rat_from_json(const Json& j);
void reject_floats(const Json& document);

Json vec_to_json(const RatVec& v);
RatVec vec_from_json(const Json& j);
Json polytope_to_json(const Polytope& p);
Polytope polytope_from_json(const Json& j);

struct RunFlags {
    std::uint64_t seed = 0;
    unsigned depth = 4;
    std::string functional_order;  // comma-separated index permutation
};

// Dispatches a parsed problem document; returns the result document.
// Domain-level negative answers (infeasible, impossible, refuted) are ok
// results with certificates embedded; schema violations throw SchemaError and
// domain errors propagate as the library exceptions.
Json run_problem(const Json& problem, const RunFlags& flags);

Json fixture_manifest_json();

}  // namespace linsel

#endif
