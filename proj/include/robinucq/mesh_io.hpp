#pragma once

#include <iosfwd>
#include <string>

#include "robinucq/geometry.hpp"

namespace robinucq {

/// Plain-text mesh format with sections `nodes` (index x y),
/// `triangles` (i j k) and `boundary` (index s); '#' starts a comment.
void write_mesh(std::ostream& os, const Mesh& mesh);
void write_mesh_file(const std::string& path, const Mesh& mesh);

Mesh read_mesh(std::istream& is);
Mesh read_mesh_file(const std::string& path);

} // namespace robinucq
