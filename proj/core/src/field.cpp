#include "minlab/field.hpp"

#include <algorithm>
#include <string>

#include "minlab/error.hpp"

namespace minlab {

ScalarField::ScalarField(const SurfaceMesh& mesh, std::vector<double> values)
    : mesh_(&mesh), values_(std::move(values)) {
  if (values_.size() != mesh.num_vertices()) {
    throw Error(ErrorKind::argument,
                "field has " + std::to_string(values_.size()) +
                    " values for " + std::to_string(mesh.num_vertices()) +
                    " vertices");
  }
}

ScalarField ScalarField::restricted(const Region& region) const {
  ScalarField out(*mesh_);
  for (Index v : region.vertices()) out.values_[v] = values_[v];
  return out;
}

ScalarField ScalarField::affine(double a, double b) const {
  ScalarField out(*mesh_);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isnan(values_[i])) out.values_[i] = a * values_[i] + b;
  }
  return out;
}

void ScalarField::require_on(const Region& region) const {
  if (&region.mesh() != mesh_) {
    throw Error(ErrorKind::argument, "field and region live on different meshes");
  }
  for (Index v : region.vertices()) {
    if (!std::isfinite(values_[v])) {
      throw Error(ErrorKind::argument,
                  "field is not defined at region vertex " + std::to_string(v));
    }
  }
}

ScalarField field_from(const SurfaceMesh& mesh,
                       const std::function<double(const MeshVertex&)>& fn) {
  std::vector<double> values(mesh.num_vertices());
  for (Index v = 0; v < mesh.num_vertices(); ++v) values[v] = fn(mesh.vertex(v));
  return ScalarField(mesh, std::move(values));
}

ScalarField coordinate_field(const SurfaceMesh& mesh, int axis) {
  if (axis < 0 || axis > 2) {
    throw Error(ErrorKind::argument, "coordinate axis must be 0, 1 or 2");
  }
  return field_from(mesh, [axis](const MeshVertex& v) { return v.position[axis]; });
}

ScalarField param_field(const SurfaceMesh& mesh, int axis) {
  if (axis < 0 || axis > 1) {
    throw Error(ErrorKind::argument, "parameter axis must be 0 or 1");
  }
  return field_from(mesh, [axis](const MeshVertex& v) {
    return axis == 0 ? v.param.u : v.param.v;
  });
}

ScalarField constant_field(const SurfaceMesh& mesh, double value) {
  return ScalarField(mesh, std::vector<double>(mesh.num_vertices(), value));
}

double field_min(const ScalarField& f, const Region& region) {
  double m = std::numeric_limits<double>::infinity();
  for (Index v : region.vertices()) m = std::min(m, f[v]);
  return m;
}

double field_max(const ScalarField& f, const Region& region) {
  double m = -std::numeric_limits<double>::infinity();
  for (Index v : region.vertices()) m = std::max(m, f[v]);
  return m;
}

}  // namespace minlab
