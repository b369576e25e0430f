#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "minlab/mesh.hpp"

namespace minlab {

/// One real value per mesh vertex. Vertices outside the field's domain hold
/// NaN and are reported absent by has().
class ScalarField {
 public:
  explicit ScalarField(const SurfaceMesh& mesh)
      : mesh_(&mesh),
        values_(mesh.num_vertices(), std::numeric_limits<double>::quiet_NaN()) {}
  ScalarField(const SurfaceMesh& mesh, std::vector<double> values);

  const SurfaceMesh& mesh() const noexcept { return *mesh_; }
  std::size_t size() const noexcept { return values_.size(); }

  bool has(Index v) const { return !std::isnan(values_[v]); }
  double operator[](Index v) const { return values_[v]; }
  double& operator[](Index v) { return values_[v]; }
  const std::vector<double>& values() const noexcept { return values_; }

  // Keeps only the region's vertices; everything else becomes absent.
  ScalarField restricted(const Region& region) const;
  // a * f + b on present entries.
  ScalarField affine(double a, double b) const;

  // Throws ErrorKind::argument when some vertex of the region is absent or
  // non-finite.
  void require_on(const Region& region) const;

 private:
  const SurfaceMesh* mesh_;
  std::vector<double> values_;
};

ScalarField field_from(const SurfaceMesh& mesh,
                       const std::function<double(const MeshVertex&)>& fn);
// Ambient coordinate x_{axis+1}, axis in {0, 1, 2}.
ScalarField coordinate_field(const SurfaceMesh& mesh, int axis);
// Parameter coordinate u (axis 0) or v (axis 1).
ScalarField param_field(const SurfaceMesh& mesh, int axis);
ScalarField constant_field(const SurfaceMesh& mesh, double value);

// min / max of the field over the region's vertices.
double field_min(const ScalarField& f, const Region& region);
double field_max(const ScalarField& f, const Region& region);

}  // namespace minlab
