#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "minlab/surfaces.hpp"
#include "minlab/vec.hpp"

namespace minlab {

using Index = std::uint32_t;
inline constexpr Index kNoIndex = std::numeric_limits<Index>::max();

struct MeshVertex {
  Vec2 param;
  Vec3 position;
  double lambda = 0.0;
};

using Triangle = std::array<Index, 3>;

/// Triangulated parameter-domain patch of an immersion.
///
/// Triangles are oriented counter-clockwise in (unwrapped) parameter
/// coordinates. neighbors()[t][e] is the triangle across the edge opposite
/// corner e, or kNoIndex on the patch boundary. When periodic_v() holds,
/// parameter v lives in [0, 2*pi) and triangles straddling the seam are
/// unwrapped on the fly by param_triangle().
class SurfaceMesh {
 public:
  SurfaceMesh(ImmersionSpec spec, double target_h, bool periodic_v,
              std::vector<MeshVertex> vertices, std::vector<Triangle> triangles);

  const ImmersionSpec& spec() const noexcept { return spec_; }
  double target_h() const noexcept { return target_h_; }
  bool periodic_v() const noexcept { return periodic_v_; }

  std::size_t num_vertices() const noexcept { return vertices_.size(); }
  std::size_t num_triangles() const noexcept { return triangles_.size(); }
  std::size_t num_edges() const noexcept { return num_edges_; }
  long euler_characteristic() const noexcept {
    return static_cast<long>(num_vertices()) - static_cast<long>(num_edges()) +
           static_cast<long>(num_triangles());
  }

  const std::vector<MeshVertex>& vertices() const noexcept { return vertices_; }
  const MeshVertex& vertex(Index i) const { return vertices_[i]; }
  const std::vector<Triangle>& triangles() const noexcept { return triangles_; }
  const Triangle& triangle(Index t) const { return triangles_[t]; }
  const std::vector<Triangle>& neighbors() const noexcept { return neighbors_; }

  // Triangles incident to vertex i.
  std::span<const Index> vertex_triangles(Index i) const {
    return {vt_index_.data() + vt_offset_[i], vt_offset_[i + 1] - vt_offset_[i]};
  }

  std::array<Vec2, 3> param_triangle(Index t) const;
  std::array<Vec3, 3> ambient_triangle(Index t) const;
  double param_area(Index t) const;    // signed, > 0 for valid triangles
  double ambient_area(Index t) const;  // flat triangle through the positions

  Index nearest_vertex(const Vec3& point) const;
  Index nearest_vertex_param(Vec2 param) const;

  // Lifts b to the periodic copy closest to a (identity when not periodic).
  Vec2 unwrap(Vec2 a, Vec2 b) const;

 private:
  void build_adjacency();

  ImmersionSpec spec_;
  double target_h_;
  bool periodic_v_;
  std::vector<MeshVertex> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<Triangle> neighbors_;
  std::vector<std::size_t> vt_offset_;
  std::vector<Index> vt_index_;
  std::size_t num_edges_ = 0;
};

struct TriangulateOptions {
  std::size_t max_vertices = 4'000'000;
  // Lawson edge flips in the parameter domain; makes every interior
  // cotangent weight non-negative.
  bool delaunay_flips = true;
};

/// Structured triangulation of the parameter patch of radius rho.
///
///   plane, enneper: fan-plus-rings on the disk |z| <= rho, ring spacing
///                   graded by 1/sqrt(lambda);
///   catenoid:       stacked closed rings on the cylinder |u| <= rho;
///   helicoid:       columns at uniformly spaced sinh u covering {|F| <= rho}, which
///                   lies inside the disk |z| <= rho.
///
/// Throws ErrorKind::resource when the vertex count would exceed
/// options.max_vertices.
SurfaceMesh triangulate(const ImmersionSpec& spec, double rho, double target_h,
                        const TriangulateOptions& options = {});

// Predicted vertex count of triangulate() without building the mesh.
std::size_t triangulate_vertex_count(const ImmersionSpec& spec, double rho,
                                     double target_h);

// triangulate() with rho = param_radius_for_ball(spec, ambient_radius).
SurfaceMesh triangulate_ball_patch(const ImmersionSpec& spec,
                                   double ambient_radius, double target_h,
                                   const TriangulateOptions& options = {});

// The vertex at parameter (0, 0): the ambient origin for plane, Enneper and
// helicoid; the point (1, 0, 0) on the catenoid neck.
Index base_vertex(const SurfaceMesh& mesh);

/// A set of triangles of a mesh with its induced vertex classification.
///
/// A vertex is a boundary vertex when it lies on an edge that belongs to
/// exactly one triangle of the set; every other vertex of the set is
/// interior.
class Region {
 public:
  static Region from_triangles(const SurfaceMesh& mesh,
                               std::vector<Index> triangles);
  static Region whole(const SurfaceMesh& mesh);

  const SurfaceMesh& mesh() const noexcept { return *mesh_; }
  std::span<const Index> triangles() const noexcept { return triangles_; }
  std::span<const Index> vertices() const noexcept { return vertices_; }
  std::span<const Index> boundary_vertices() const noexcept {
    return boundary_;
  }
  std::span<const Index> interior_vertices() const noexcept {
    return interior_;
  }
  bool empty() const noexcept { return triangles_.empty(); }

  bool contains_triangle(Index t) const { return tri_mask_[t] != 0; }
  bool contains_vertex(Index v) const { return vert_state_[v] != 0; }
  bool is_boundary_vertex(Index v) const { return vert_state_[v] == 2; }
  // Edge opposite corner e of triangle t (t must be in the region).
  bool is_boundary_edge(Index t, int e) const;

  std::size_t num_edges() const noexcept { return num_edges_; }
  long euler_characteristic() const noexcept {
    return static_cast<long>(vertices_.size()) - static_cast<long>(num_edges_) +
           static_cast<long>(triangles_.size());
  }
  // True when some region edge lies on the boundary of the whole patch.
  bool touches_mesh_boundary() const noexcept { return touches_mesh_boundary_; }

 protected:
  Region() = default;
  void init(const SurfaceMesh& mesh, std::vector<Index> triangles);

 private:
  const SurfaceMesh* mesh_ = nullptr;
  std::vector<Index> triangles_;
  std::vector<Index> vertices_;
  std::vector<Index> boundary_;
  std::vector<Index> interior_;
  std::vector<std::uint8_t> tri_mask_;
  std::vector<std::uint8_t> vert_state_;  // 0 absent, 1 interior, 2 boundary
  std::size_t num_edges_ = 0;
  bool touches_mesh_boundary_ = false;
};

/// Connected component Sigma_{x,r} of the open extrinsic ball B_r(x) through
/// the root vertex x.
///
/// Membership is vertex-strict: a triangle is a candidate when all three
/// vertices satisfy |p - p(root)| < r; the component is the edge-adjacency
/// closure of the candidates incident to the root.
class BallComponent : public Region {
 public:
  Index root() const noexcept { return root_; }
  double radius() const noexcept { return radius_; }

 private:
  friend BallComponent ball_component(const SurfaceMesh&, Index, double);
  Index root_ = kNoIndex;
  double radius_ = 0.0;
};

// Throws ErrorKind::degenerate when no triangle around the root lies inside
// the ball (radius below the local edge length).
BallComponent ball_component(const SurfaceMesh& mesh, Index root, double r);

double surface_area(const SurfaceMesh& mesh, std::span<const Index> triangles);
double surface_area(const Region& region);

struct AreaGrowth {
  std::vector<double> radii;
  std::vector<double> areas;
  double c_a = 0.0;           // max area / r^2
  double exponent = 0.0;      // least-squares slope of log area vs log r
  double max_residual = 0.0;  // of the log-log fit
};

// Throws ErrorKind::argument for fewer than 3 or non-increasing radii.
AreaGrowth area_growth_fit(const SurfaceMesh& mesh, Index root,
                           std::span<const double> radii);

// Largest signed distance of an interior vertex outside the convex hull of
// the component's boundary vertices (0 when all lie inside).
double convex_hull_check(const Region& component);

}  // namespace minlab
