#pragma once

// Result files (JSON with sorted keys, exact values as strings), DOT graphs
// and the plain-text relator format.

#include <string>

#include <json.hpp>

#include "vorunits/presentation.hpp"

namespace vor {

using Json = nlohmann::json;

Json to_json(const Scalar& s);
Json to_json(const ZMatrix& m);
Json to_json(const EMatrix& m);
Json to_json(const EVec& v);

Json graph_json(const FormChart& chart, const VoronoiGraph& g);
std::string graph_dot(const VoronoiGraph& g);

/// Generators with their matrices, relators as words, and the relator kinds.
Json presentation_json(const GroupPresentation& p);
/// generators: a, b, t
/// relators: a^3, b^2, a*t*b*t
std::string presentation_text(const GroupPresentation& p);

Json abelianization_json(const Abelianization& a);

/// Canonical serialization: one-space indentation, sorted keys, trailing newline.
std::string canonical_dump(const Json& j);

ZMatrix parse_integer_matrix(const Json& j);

}  // namespace vor
