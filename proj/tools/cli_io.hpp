#pragma once

// JSON input formats for the command-line driver.  Every loader throws
// ParseError on malformed JSON or missing fields and lets AlgebraError from
// the library propagate for inputs that parse but are not valid algebra.

#include <json.hpp>
#include <string>

#include "quadgroup/passi.hpp"
#include "quadgroup/universal_q.hpp"

namespace qg::cli {

using Json = nlohmann::ordered_json;

/// Reads a file, or parses the argument itself when it starts with '{'.
Json load_json(const std::string& path_or_inline);

/// {"kind":"table"|"perm"|"builtin", ...}
FiniteGroup group_from_json(const Json& j, const Limits& limits);
/// "trivial", "all", "center", "derived", or {"elements":[…]} / {"generators":[…]}.
Subgroup subgroup_from_spec(const FiniteGroup& g, const std::string& spec);
Subgroup subgroup_from_json(const FiniteGroup& g, const Json& j);
/// {"factors":[…]}
FgAb fgab_from_json(const Json& j);

/// "values": element indices of the codomain.
GroupFunction map_from_json(const Json& j, const FiniteGroup& domain, const FiniteGroup& codomain);
/// "values": mixed-radix indices or coordinate lists in the FgAb codomain.
AbValuedMap poly_map_from_json(const Json& j, const FiniteGroup& domain, const FgAb& codomain);

/// {"generators":k,"relators":[[["x0",1],…],…],"pi":{"group":…,"images":[…]}}
Presentation presentation_from_json(const Json& j, const Limits& limits);
/// {"chi":[…],"psi":[[…],…]}
GenPair genpair_from_json(const Json& j);

}  // namespace qg::cli
