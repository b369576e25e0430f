#pragma once

#include <span>
#include <vector>

#include "minlab/vec.hpp"

namespace minlab {

/// Convex hull of a 3D point set, built incrementally.
///
/// Point sets without four non-coplanar points fall back to a planar hull:
/// the 2D hull in the supporting plane (or a segment when collinear).
class ConvexHull3 {
 public:
  explicit ConvexHull3(std::span<const Vec3> points);

  bool planar() const noexcept { return planar_; }
  std::size_t num_faces() const noexcept { return faces_.size(); }

  // max over supporting planes of the signed distance; <= 0 inside.
  double signed_distance(const Vec3& p) const;

 private:
  struct Plane {
    Vec3 normal;  // unit, outward
    double offset = 0.0;
  };

  void build_planar(std::span<const Vec3> points, const Vec3& normal);

  bool planar_ = false;
  std::vector<Plane> faces_;
  // Planar fallback: supporting plane plus in-plane edge half-planes.
  Plane support_;
  std::vector<Plane> edges_;
};

}  // namespace minlab
