#include "minlab/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "minlab/error.hpp"

namespace minlab {

std::array<double, 3> cotangent_weights(const std::array<Vec2, 3>& p) {
  std::array<double, 3> w{};
  const double twice_area = cross(p[1] - p[0], p[2] - p[0]);
  for (int k = 0; k < 3; ++k) {
    const Vec2 a = p[(k + 1) % 3] - p[k];
    const Vec2 b = p[(k + 2) % 3] - p[k];
    w[k] = 0.5 * dot(a, b) / twice_area;
  }
  return w;
}

Vec2 param_gradient(const std::array<Vec2, 3>& p, double f0, double f1,
                    double f2) {
  const Vec2 e1 = p[1] - p[0], e2 = p[2] - p[0];
  const double det = cross(e1, e2);
  const double d1 = f1 - f0, d2 = f2 - f0;
  return {(e2.v * d1 - e1.v * d2) / det, (e1.u * d2 - e2.u * d1) / det};
}

double EnergyForm::energy(const ScalarField& f) const {
  double e = 0.0;
  for (const auto& edge : edges) {
    const double d = f[edge.i] - f[edge.j];
    e += edge.weight * d * d;
  }
  return e;
}

EnergyForm assemble_energy(const Region& region) {
  const SurfaceMesh& mesh = region.mesh();
  std::vector<std::pair<std::uint64_t, double>> contrib;
  contrib.reserve(3 * region.triangles().size());
  for (Index t : region.triangles()) {
    const auto w = cotangent_weights(mesh.param_triangle(t));
    const auto& tri = mesh.triangle(t);
    for (int k = 0; k < 3; ++k) {
      Index a = tri[(k + 1) % 3], b = tri[(k + 2) % 3];
      if (a > b) std::swap(a, b);
      contrib.push_back({(std::uint64_t{a} << 32) | b, w[k]});
    }
  }
  std::sort(contrib.begin(), contrib.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });

  EnergyForm form;
  for (std::size_t i = 0; i < contrib.size();) {
    double w = 0.0;
    std::size_t j = i;
    for (; j < contrib.size() && contrib[j].first == contrib[i].first; ++j) {
      w += contrib[j].second;
    }
    form.edges.push_back({static_cast<Index>(contrib[i].first >> 32),
                          static_cast<Index>(contrib[i].first & 0xffffffffu), w});
    i = j;
  }

  form.row_of_vertex.assign(mesh.num_vertices(), kNoIndex);
  for (Index v : region.interior_vertices()) {
    form.row_of_vertex[v] = static_cast<Index>(form.unknowns.size());
    form.unknowns.push_back(v);
  }
  const std::size_t n = form.unknowns.size();

  // Count entries per row, then fill.
  std::vector<std::size_t> inner(n, 1), outer(n, 0);
  for (const auto& e : form.edges) {
    const Index ri = form.row_of_vertex[e.i], rj = form.row_of_vertex[e.j];
    if (ri != kNoIndex) ++(rj != kNoIndex ? inner[ri] : outer[ri]);
    if (rj != kNoIndex) ++(ri != kNoIndex ? inner[rj] : outer[rj]);
  }
  form.row_ptr.assign(n + 1, 0);
  form.bnd_ptr.assign(n + 1, 0);
  for (std::size_t r = 0; r < n; ++r) {
    form.row_ptr[r + 1] = form.row_ptr[r] + inner[r];
    form.bnd_ptr[r + 1] = form.bnd_ptr[r] + outer[r];
  }
  form.col.assign(form.row_ptr.back(), 0);
  form.val.assign(form.row_ptr.back(), 0.0);
  form.bnd_vertex.assign(form.bnd_ptr.back(), 0);
  form.bnd_weight.assign(form.bnd_ptr.back(), 0.0);
  std::vector<std::size_t> fill_in(form.row_ptr.begin(), form.row_ptr.end() - 1);
  std::vector<std::size_t> fill_out(form.bnd_ptr.begin(), form.bnd_ptr.end() - 1);
  for (std::size_t r = 0; r < n; ++r) {
    form.col[fill_in[r]] = static_cast<Index>(r);  // diagonal first
    ++fill_in[r];
  }
  auto couple = [&](Index row, Index other_vertex, double w) {
    form.val[form.row_ptr[row]] += w;
    const Index c = form.row_of_vertex[other_vertex];
    if (c != kNoIndex) {
      form.col[fill_in[row]] = c;
      form.val[fill_in[row]++] = -w;
    } else {
      form.bnd_vertex[fill_out[row]] = other_vertex;
      form.bnd_weight[fill_out[row]++] = w;
    }
  };
  for (const auto& e : form.edges) {
    const Index ri = form.row_of_vertex[e.i], rj = form.row_of_vertex[e.j];
    if (ri != kNoIndex) couple(ri, e.j, e.weight);
    if (rj != kNoIndex) couple(rj, e.i, e.weight);
  }
  return form;
}

ScalarField solve_dirichlet(const Region& region,
                            const ScalarField& boundary_values,
                            const SolveOptions& options, SolveStats* stats) {
  if (region.boundary_vertices().empty()) {
    throw Error(ErrorKind::degenerate,
                "Dirichlet problem without boundary vertices is singular");
  }
  for (Index v : region.boundary_vertices()) {
    if (!std::isfinite(boundary_values[v])) {
      throw Error(ErrorKind::argument,
                  "boundary value missing at vertex " + std::to_string(v));
    }
  }
  const EnergyForm form = assemble_energy(region);
  const std::size_t n = form.unknowns.size();

  std::vector<double> b(n, 0.0), x(n, 0.0), r(n), z(n), p(n), q(n), diag(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = form.bnd_ptr[i]; k < form.bnd_ptr[i + 1]; ++k) {
      b[i] += form.bnd_weight[k] * boundary_values[form.bnd_vertex[k]];
    }
    diag[i] = form.val[form.row_ptr[i]];
    if (!(diag[i] > 0.0)) diag[i] = 1.0;
  }
  auto apply = [&](const std::vector<double>& in, std::vector<double>& out) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t k = form.row_ptr[i]; k < form.row_ptr[i + 1]; ++k) {
        s += form.val[k] * in[form.col[k]];
      }
      out[i] = s;
    }
  };
  auto dotv = [n](const std::vector<double>& a, const std::vector<double>& c) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * c[i];
    return s;
  };

  const double bnorm = std::sqrt(dotv(b, b));
  std::size_t it = 0;
  double rel = 0.0;
  if (n > 0 && bnorm > 0.0) {
    r = b;
    for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / diag[i];
    p = z;
    double rz = dotv(r, z);
    const std::size_t cap = std::max<std::size_t>(options.iteration_factor * n, 1);
    rel = 1.0;
    while (rel > options.relative_tolerance) {
      if (it >= cap) {
        throw Error(ErrorKind::numerical,
                    "conjugate gradients stalled at relative residual " +
                        std::to_string(rel) + " after " + std::to_string(it) +
                        " iterations");
      }
      apply(p, q);
      const double alpha = rz / dotv(p, q);
      for (std::size_t i = 0; i < n; ++i) {
        x[i] += alpha * p[i];
        r[i] -= alpha * q[i];
      }
      for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / diag[i];
      const double rz_next = dotv(r, z);
      const double beta = rz_next / rz;
      rz = rz_next;
      for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
      rel = std::sqrt(dotv(r, r)) / bnorm;
      ++it;
    }
  }
  if (stats) *stats = {n, it, rel};

  ScalarField out(region.mesh());
  for (Index v : region.boundary_vertices()) out[v] = boundary_values[v];
  for (std::size_t i = 0; i < n; ++i) out[form.unknowns[i]] = x[i];
  return out;
}

namespace {

template <typename PerTriangle>
double sum_over(const ScalarField& f, const Region& region, PerTriangle&& term) {
  f.require_on(region);
  const SurfaceMesh& mesh = region.mesh();
  double total = 0.0;
  for (Index t : region.triangles()) {
    const auto& tri = mesh.triangle(t);
    const auto p = mesh.param_triangle(t);
    const Vec2 g = param_gradient(p, f[tri[0]], f[tri[1]], f[tri[2]]);
    total += term(t, g, 0.5 * cross(p[1] - p[0], p[2] - p[0]));
  }
  return total;
}

}  // namespace

double dirichlet_energy(const ScalarField& f, const Region& region) {
  return sum_over(f, region, [](Index, Vec2 g, double area) {
    return dot(g, g) * area;
  });
}

double dirichlet_energy_metric(const ScalarField& f, const Region& region) {
  const SurfaceMesh& mesh = region.mesh();
  return sum_over(f, region, [&](Index t, Vec2 g, double area) {
    const auto& tri = mesh.triangle(t);
    const double lambda = (mesh.vertex(tri[0]).lambda + mesh.vertex(tri[1]).lambda +
                           mesh.vertex(tri[2]).lambda) /
                          3.0;
    return (dot(g, g) / lambda) * (lambda * area);
  });
}

double gradient_l1(const ScalarField& f, const Region& region) {
  const SurfaceMesh& mesh = region.mesh();
  return sum_over(f, region, [&](Index t, Vec2 g, double area) {
    return norm(g) * std::sqrt(mesh.ambient_area(t) * area);
  });
}

std::vector<double> vertex_areas(const Region& region) {
  const SurfaceMesh& mesh = region.mesh();
  std::vector<double> a(mesh.num_vertices(), 0.0);
  for (Index t : region.triangles()) {
    const double third = mesh.ambient_area(t) / 3.0;
    for (Index v : mesh.triangle(t)) a[v] += third;
  }
  return a;
}

}  // namespace minlab
