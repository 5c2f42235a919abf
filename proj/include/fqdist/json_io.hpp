#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fqdist/gf.hpp"
#include "fqdist/incidence.hpp"
#include "fqdist/tree_embed.hpp"

namespace fqdist {

using Json = nlohmann::json;

// Shared wire encodings. A field element is a bare integer for prime fields
// and a low-to-high coefficient list (length ext_degree) otherwise; points
// are length-d lists of element encodings.
Json element_to_json(const FieldSpec& f, elem_t a);
elem_t element_from_json(const FieldSpec& f, const Json& j);

Json point_to_json(const FieldSpec& f, const Point& x);
Point point_from_json(const FieldSpec& f, const Json& j);

// {"p":..,"ext_degree":..,"d":..,"points":[...]}
Json point_set_to_json(const DistanceGraphFamily& geometry,
                       const std::vector<std::uint32_t>& points);
std::vector<std::uint32_t> point_set_from_json(const DistanceGraphFamily& geometry, const Json& j);

// {"p":..,"ext_degree":..,"d":..,"spheres":[{"center":point,"radius":element},...]}
Json sphere_set_to_json(const DistanceGraphFamily& geometry, const SphereSet& spheres);
SphereSet sphere_set_from_json(const DistanceGraphFamily& geometry, const Json& j);

// {"vertices":n,"edges":[[u,v,color],...]}; colors are 0-based.
Json tree_to_json(const ColoredTree& tree);
ColoredTree tree_from_json(const Json& j, std::int32_t t);

// {"vertices":n,"colors":t,"edges":[[u,v,color],...]}
Json family_to_json(const ColoredFamily& g);
ColoredFamily family_from_json(const Json& j);

Json load_json_file(const std::string& path);
// Atomic write (temp file + rename); a trailing newline terminates the file.
void write_json_file(const std::string& path, const Json& j);

}  // namespace fqdist
