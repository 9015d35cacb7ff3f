#pragma once

#include <json.hpp>

#include "ellwp/freedec.hpp"
#include "ellwp/perm.hpp"
#include "ellwp/present.hpp"
#include "ellwp/term.hpp"

namespace ellwp {

using Json = nlohmann::json;

// PL maps serialize as breakpoint lists [["x","y"], ...] with exact rational
// coordinates in canonical text form; the identity is the empty list.
Json plmap_json(const PLMap& m);
PLMap plmap_from_json(const Json& j);

Json assignment_json(const PLAssignment& a);
PLAssignment assignment_from_json(const Json& j);

// {"generators": ["x", ...], "relators": ["<term text>", ...]}
Json presentation_json(const Presentation& p);
Presentation presentation_from_json(const Json& j);

// [["<u term>", "<v term>"], ...] over the given alphabet.
std::vector<std::pair<Term, Term>> pairs_from_json(const Json& j, const AlphabetPtr& alpha);

Json certificate_json(const Certificate& c);

Json diagram_json(const Diagram& d, const Alphabet& alpha);

}  // namespace ellwp
