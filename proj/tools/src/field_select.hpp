#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "minlab/field.hpp"
#include "minlab/harmonic.hpp"
#include "minlab/mesh.hpp"

namespace minlab::cli {

/// Field names accepted in [field] name:
///   x1 x2 x3        ambient coordinates
///   u v             parameter coordinates
///   const:<c>       constant c
///   dirichlet:<d>   harmonic extension into a ball component of boundary
///                   data d, one of x1 x2 x3 u v random poly<n>
/// random draws i.i.d. values in [-1, 1) per vertex from splitmix64(seed);
/// poly<n> is Re((u + i v)^n).
struct FieldSelection {
  enum class Data { coordinate, parameter, constant, random, poly };
  Data data = Data::coordinate;
  int index = 2;  // axis for coordinate/parameter, degree for poly
  double constant = 0.0;
  bool dirichlet = false;
};

// Throws Error(argument) for anything outside the grammar.
FieldSelection parse_field_selection(std::string_view text);

ScalarField evaluate_data(const SurfaceMesh& mesh, const FieldSelection& sel,
                          std::uint64_t seed);

// The selected field on the mesh, scaled and shifted: scale * f + shift.
// Dirichlet fields are solved on the component of radius dirichlet_radius
// about root and are absent outside it.
ScalarField build_field(const SurfaceMesh& mesh, const FieldSelection& sel,
                        Index root, double dirichlet_radius, std::uint64_t seed,
                        double scale, double shift, SolveStats* stats = nullptr);

}  // namespace minlab::cli
