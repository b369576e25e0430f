#pragma once

#include <vector>

#include "minlab/field.hpp"
#include "minlab/mesh.hpp"

namespace minlab {

struct LevelSegment {
  Vec3 a;
  Vec3 b;
  Index triangle;
  int component;
};

struct LevelComponent {
  double length = 0.0;
  bool touches_boundary = false;
  std::vector<std::size_t> segments;  // indices into LevelSet::segments
};

/// {f = s} on a region: one ambient segment per crossed triangle, grouped
/// into components through shared crossed edges.
struct LevelSet {
  double level = 0.0;
  std::vector<LevelSegment> segments;
  std::vector<LevelComponent> components;
  double total_length = 0.0;
};

/// Marching triangles on the piecewise-linear interpolant. A vertex value
/// equal to s is treated as s + 1e-14 (1 + |s|). A component touches the
/// boundary when one of its crossed edges is a boundary edge of the region.
LevelSet level_set(const ScalarField& f, double s, const Region& region);

struct CoareaCheck {
  double gradient_l1 = 0.0;
  double level_integral = 0.0;  // midpoint rule over s of total length
  double relative_error = 0.0;
  int levels = 0;
};

/// Compares gradient_l1 with the integral over s of the level-set length.
/// Levels sit at the midpoints of n equal cells of [min f, max f]. Throws
/// ErrorKind::argument for n < 16 and ErrorKind::degenerate for a constant
/// field (both sides vanish, so the identity holds exactly).
CoareaCheck coarea_check(const ScalarField& f, const Region& region,
                         int n_levels);

// Total length of {f = 0}.
double nodal_length(const ScalarField& f, const Region& region);

}  // namespace minlab
