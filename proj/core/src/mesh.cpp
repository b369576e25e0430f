#include "minlab/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "minlab/error.hpp"
#include "minlab/fit.hpp"

namespace minlab {

SurfaceMesh::SurfaceMesh(ImmersionSpec spec, double target_h, bool periodic_v,
                         std::vector<MeshVertex> vertices,
                         std::vector<Triangle> triangles)
    : spec_(spec),
      target_h_(target_h),
      periodic_v_(periodic_v),
      vertices_(std::move(vertices)),
      triangles_(std::move(triangles)) {
  if (!(target_h_ > 0.0)) {
    throw Error(ErrorKind::argument, "target_h must be positive");
  }
  const auto nv = static_cast<Index>(vertices_.size());
  for (const auto& tri : triangles_) {
    for (Index i : tri) {
      if (i >= nv) throw Error(ErrorKind::argument, "triangle index out of range");
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
      throw Error(ErrorKind::argument, "triangle with repeated vertex");
    }
  }
  const double min_area = 1e-14 * target_h_ * target_h_;
  for (Index t = 0; t < triangles_.size(); ++t) {
    if (!(param_area(t) > min_area)) {
      throw Error(ErrorKind::argument,
                  "degenerate or inverted parameter triangle " +
                      std::to_string(t));
    }
  }
  build_adjacency();
}

void SurfaceMesh::build_adjacency() {
  const std::size_t nt = triangles_.size();
  std::vector<std::pair<std::uint64_t, std::uint64_t>> half(3 * nt);
  for (std::size_t t = 0; t < nt; ++t) {
    for (int e = 0; e < 3; ++e) {
      Index a = triangles_[t][(e + 1) % 3], b = triangles_[t][(e + 2) % 3];
      if (a > b) std::swap(a, b);
      half[3 * t + e] = {(std::uint64_t{a} << 32) | b, 3 * t + e};
    }
  }
  std::sort(half.begin(), half.end());
  neighbors_.assign(nt, Triangle{kNoIndex, kNoIndex, kNoIndex});
  num_edges_ = 0;
  for (std::size_t i = 0; i < half.size();) {
    std::size_t j = i + 1;
    while (j < half.size() && half[j].first == half[i].first) ++j;
    if (j - i > 2) {
      throw Error(ErrorKind::argument, "non-manifold edge in triangulation");
    }
    if (j - i == 2) {
      const auto h0 = half[i].second, h1 = half[i + 1].second;
      neighbors_[h0 / 3][h0 % 3] = static_cast<Index>(h1 / 3);
      neighbors_[h1 / 3][h1 % 3] = static_cast<Index>(h0 / 3);
    }
    ++num_edges_;
    i = j;
  }

  vt_offset_.assign(vertices_.size() + 1, 0);
  for (const auto& tri : triangles_) {
    for (Index v : tri) ++vt_offset_[v + 1];
  }
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    vt_offset_[i + 1] += vt_offset_[i];
  }
  vt_index_.resize(vt_offset_.back());
  std::vector<std::size_t> fill(vt_offset_.begin(), vt_offset_.end() - 1);
  for (Index t = 0; t < nt; ++t) {
    for (Index v : triangles_[t]) vt_index_[fill[v]++] = t;
  }
}

Vec2 SurfaceMesh::unwrap(Vec2 a, Vec2 b) const {
  if (!periodic_v_) return b;
  constexpr double period = 2.0 * std::numbers::pi;
  const double d = b.v - a.v;
  b.v -= period * std::round(d / period);
  return b;
}

std::array<Vec2, 3> SurfaceMesh::param_triangle(Index t) const {
  const auto& tri = triangles_[t];
  const Vec2 p0 = vertices_[tri[0]].param;
  return {p0, unwrap(p0, vertices_[tri[1]].param),
          unwrap(p0, vertices_[tri[2]].param)};
}

std::array<Vec3, 3> SurfaceMesh::ambient_triangle(Index t) const {
  const auto& tri = triangles_[t];
  return {vertices_[tri[0]].position, vertices_[tri[1]].position,
          vertices_[tri[2]].position};
}

double SurfaceMesh::param_area(Index t) const {
  const auto p = param_triangle(t);
  return 0.5 * cross(p[1] - p[0], p[2] - p[0]);
}

double SurfaceMesh::ambient_area(Index t) const {
  const auto p = ambient_triangle(t);
  return 0.5 * norm(cross(p[1] - p[0], p[2] - p[0]));
}

Index SurfaceMesh::nearest_vertex(const Vec3& point) const {
  Index best = kNoIndex;
  double best_d = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < vertices_.size(); ++i) {
    const double d = norm2(vertices_[i].position - point);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

Index SurfaceMesh::nearest_vertex_param(Vec2 param) const {
  Index best = kNoIndex;
  double best_d = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < vertices_.size(); ++i) {
    const Vec2 q = unwrap(param, vertices_[i].param);
    const double d = dot(q - param, q - param);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

Index base_vertex(const SurfaceMesh& mesh) {
  return mesh.nearest_vertex_param({0.0, 0.0});
}

// ---------------------------------------------------------------------------
// Region

Region Region::from_triangles(const SurfaceMesh& mesh,
                              std::vector<Index> triangles) {
  Region r;
  r.init(mesh, std::move(triangles));
  return r;
}

Region Region::whole(const SurfaceMesh& mesh) {
  std::vector<Index> all(mesh.num_triangles());
  for (Index t = 0; t < all.size(); ++t) all[t] = t;
  return from_triangles(mesh, std::move(all));
}

void Region::init(const SurfaceMesh& mesh, std::vector<Index> triangles) {
  mesh_ = &mesh;
  std::sort(triangles.begin(), triangles.end());
  triangles.erase(std::unique(triangles.begin(), triangles.end()),
                  triangles.end());
  triangles_ = std::move(triangles);
  tri_mask_.assign(mesh.num_triangles(), 0);
  vert_state_.assign(mesh.num_vertices(), 0);
  for (Index t : triangles_) {
    if (t >= mesh.num_triangles()) {
      throw Error(ErrorKind::argument, "region triangle out of range");
    }
    tri_mask_[t] = 1;
    for (Index v : mesh.triangle(t)) vert_state_[v] = 1;
  }
  num_edges_ = 0;
  touches_mesh_boundary_ = false;
  for (Index t : triangles_) {
    const auto& tri = mesh.triangle(t);
    for (int e = 0; e < 3; ++e) {
      const Index n = mesh.neighbors()[t][e];
      if (n == kNoIndex || !tri_mask_[n]) {
        ++num_edges_;
        vert_state_[tri[(e + 1) % 3]] = 2;
        vert_state_[tri[(e + 2) % 3]] = 2;
        if (n == kNoIndex) touches_mesh_boundary_ = true;
      } else if (t < n) {
        ++num_edges_;
      }
    }
  }
  vertices_.clear();
  boundary_.clear();
  interior_.clear();
  for (Index v = 0; v < vert_state_.size(); ++v) {
    if (vert_state_[v] == 0) continue;
    vertices_.push_back(v);
    (vert_state_[v] == 2 ? boundary_ : interior_).push_back(v);
  }
}

bool Region::is_boundary_edge(Index t, int e) const {
  const Index n = mesh_->neighbors()[t][e];
  return n == kNoIndex || !tri_mask_[n];
}

BallComponent ball_component(const SurfaceMesh& mesh, Index root, double r) {
  if (root >= mesh.num_vertices()) {
    throw Error(ErrorKind::argument, "root vertex out of range");
  }
  if (!(r > 0.0)) throw Error(ErrorKind::argument, "ball radius must be > 0");
  const Vec3 center = mesh.vertex(root).position;
  const double r2 = r * r;
  std::vector<std::uint8_t> inside(mesh.num_vertices());
  for (Index v = 0; v < mesh.num_vertices(); ++v) {
    inside[v] = norm2(mesh.vertex(v).position - center) < r2;
  }
  auto candidate = [&](Index t) {
    const auto& tri = mesh.triangle(t);
    return inside[tri[0]] && inside[tri[1]] && inside[tri[2]];
  };

  std::vector<std::uint8_t> seen(mesh.num_triangles(), 0);
  std::vector<Index> stack;
  std::vector<Index> found;
  for (Index t : mesh.vertex_triangles(root)) {
    if (candidate(t)) {
      seen[t] = 1;
      stack.push_back(t);
    }
  }
  if (stack.empty()) {
    throw Error(ErrorKind::degenerate,
                "ball radius " + std::to_string(r) +
                    " is below the local edge length at the root");
  }
  while (!stack.empty()) {
    const Index t = stack.back();
    stack.pop_back();
    found.push_back(t);
    for (Index n : mesh.neighbors()[t]) {
      if (n != kNoIndex && !seen[n] && candidate(n)) {
        seen[n] = 1;
        stack.push_back(n);
      }
    }
  }
  BallComponent c;
  c.init(mesh, std::move(found));
  c.root_ = root;
  c.radius_ = r;
  return c;
}

double surface_area(const SurfaceMesh& mesh, std::span<const Index> triangles) {
  double a = 0.0;
  for (Index t : triangles) a += mesh.ambient_area(t);
  return a;
}

double surface_area(const Region& region) {
  return surface_area(region.mesh(), region.triangles());
}

AreaGrowth area_growth_fit(const SurfaceMesh& mesh, Index root,
                           std::span<const double> radii) {
  if (radii.size() < 3) {
    throw Error(ErrorKind::argument, "area growth fit needs >= 3 radii");
  }
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i] > radii[i - 1])) {
      throw Error(ErrorKind::argument, "radii must be strictly increasing");
    }
  }
  AreaGrowth g;
  g.radii.assign(radii.begin(), radii.end());
  for (double r : radii) {
    const double a = surface_area(ball_component(mesh, root, r));
    g.areas.push_back(a);
    g.c_a = std::max(g.c_a, a / (r * r));
  }
  const LineFit f = fit_power_law(g.radii, g.areas);
  g.exponent = f.slope;
  g.max_residual = f.max_residual;
  return g;
}

}  // namespace minlab
