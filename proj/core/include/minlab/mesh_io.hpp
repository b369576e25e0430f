#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "minlab/field.hpp"
#include "minlab/level_set.hpp"
#include "minlab/mesh.hpp"

namespace minlab {

// Shortest decimal string that parses back to the same double; "nan" and
// "inf"/"-inf" for non-finite values.
std::string format_double(double x);
// Inverse of format_double. Throws ErrorKind::io on malformed input.
double parse_double(std::string_view text);

/// Text mesh format:
///   minlab-mesh v1 <kind> <order> <periodic_v 0|1>
///   v <u> <v> <x> <y> <z> <lambda>     (one per vertex)
///   t <i> <j> <k>                      (0-based)
/// Triangles are validated on load exactly as in the SurfaceMesh
/// constructor. target_h of a loaded mesh is the median ambient edge length.
void write_mesh(std::ostream& out, const SurfaceMesh& mesh);
SurfaceMesh read_mesh(std::istream& in);
void save_mesh(const std::filesystem::path& path, const SurfaceMesh& mesh);
SurfaceMesh load_mesh(const std::filesystem::path& path);

/// minlab-field v1 <n>, then one value per line in vertex order ("nan" for
/// absent entries).
void write_field(std::ostream& out, const ScalarField& field);
ScalarField read_field(std::istream& in, const SurfaceMesh& mesh);
void save_field(const std::filesystem::path& path, const ScalarField& field);
ScalarField load_field(const std::filesystem::path& path,
                       const SurfaceMesh& mesh);

// x1,y1,z1,x2,y2,z2,component_id
void write_level_set_csv(std::ostream& out, const LevelSet& level_set);

}  // namespace minlab
