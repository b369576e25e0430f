#include "minlab/convex_hull.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>

#include "minlab/error.hpp"
#include "minlab/mesh.hpp"

namespace minlab {

namespace {

struct Face {
  int a, b, c;
  Vec3 normal;
  double offset;
  bool alive = true;
};

std::uint64_t edge_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

Face make_face(std::span<const Vec3> p, int a, int b, int c) {
  Vec3 n = cross(p[b] - p[a], p[c] - p[a]);
  const double len = norm(n);
  n = (len > 0.0 ? 1.0 / len : 0.0) * n;
  return {a, b, c, n, dot(n, p[a])};
}

double face_distance(const Face& f, const Vec3& q) {
  return dot(f.normal, q) - f.offset;
}

}  // namespace

ConvexHull3::ConvexHull3(std::span<const Vec3> points) {
  if (points.empty()) {
    throw Error(ErrorKind::argument, "convex hull of an empty point set");
  }
  const int n = static_cast<int>(points.size());
  Vec3 lo = points[0], hi = points[0];
  for (const auto& p : points) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  const double scale = std::max(norm(hi - lo), 1e-300);
  const double eps = 1e-10 * scale;

  // Initial simplex from extreme points.
  int i0 = 0;
  for (int i = 1; i < n; ++i) {
    if (points[i].x < points[i0].x) i0 = i;
  }
  int i1 = i0;
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = norm(points[i] - points[i0]);
    if (d > best) {
      best = d;
      i1 = i;
    }
  }
  int i2 = i1;
  best = 0.0;
  const Vec3 axis = points[i1] - points[i0];
  for (int i = 0; i < n; ++i) {
    const double d = norm(cross(axis, points[i] - points[i0])) /
                     std::max(norm(axis), 1e-300);
    if (d > best) {
      best = d;
      i2 = i;
    }
  }
  if (best <= eps) {
    // Collinear (or a single point): any plane containing the line works.
    Vec3 t = norm(axis) > 0.0 ? (1.0 / norm(axis)) * axis : Vec3{1, 0, 0};
    Vec3 other = std::abs(t.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    Vec3 nrm = cross(t, other);
    build_planar(points, (1.0 / norm(nrm)) * nrm);
    return;
  }
  Vec3 nrm = cross(points[i1] - points[i0], points[i2] - points[i0]);
  nrm = (1.0 / norm(nrm)) * nrm;
  int i3 = -1;
  best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = std::abs(dot(nrm, points[i] - points[i0]));
    if (d > best) {
      best = d;
      i3 = i;
    }
  }
  if (best <= eps) {
    build_planar(points, nrm);
    return;
  }

  std::vector<Face> faces;
  faces.reserve(2 * points.size());
  std::unordered_map<std::uint64_t, int> edge_face;
  auto add_face = [&](int a, int b, int c) {
    faces.push_back(make_face(points, a, b, c));
    const int f = static_cast<int>(faces.size()) - 1;
    edge_face[edge_key(a, b)] = f;
    edge_face[edge_key(b, c)] = f;
    edge_face[edge_key(c, a)] = f;
  };
  if (dot(nrm, points[i3] - points[i0]) > 0.0) std::swap(i1, i2);
  add_face(i0, i1, i2);
  add_face(i0, i3, i1);
  add_face(i1, i3, i2);
  add_face(i2, i3, i0);

  std::vector<int> visible, stack;
  std::vector<int> mark;
  int stamp = 0;
  for (int pi = 0; pi < n; ++pi) {
    if (pi == i0 || pi == i1 || pi == i2 || pi == i3) continue;
    const Vec3& p = points[pi];
    int seed = -1;
    double far = eps;
    for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
      if (!faces[f].alive) continue;
      const double d = face_distance(faces[f], p);
      if (d > far) {
        far = d;
        seed = f;
      }
    }
    if (seed < 0) continue;

    ++stamp;
    mark.resize(faces.size(), 0);
    visible.clear();
    stack.assign(1, seed);
    mark[seed] = stamp;
    while (!stack.empty()) {
      const int f = stack.back();
      stack.pop_back();
      visible.push_back(f);
      const int v[3] = {faces[f].a, faces[f].b, faces[f].c};
      for (int e = 0; e < 3; ++e) {
        const int g = edge_face[edge_key(v[(e + 1) % 3], v[e])];
        if (mark[g] != stamp && face_distance(faces[g], p) > eps) {
          mark[g] = stamp;
          stack.push_back(g);
        }
      }
    }
    std::vector<std::pair<int, int>> horizon;
    for (int f : visible) {
      const int v[3] = {faces[f].a, faces[f].b, faces[f].c};
      for (int e = 0; e < 3; ++e) {
        const int g = edge_face[edge_key(v[(e + 1) % 3], v[e])];
        if (mark[g] != stamp) horizon.push_back({v[e], v[(e + 1) % 3]});
      }
    }
    for (int f : visible) {
      faces[f].alive = false;
      edge_face.erase(edge_key(faces[f].a, faces[f].b));
      edge_face.erase(edge_key(faces[f].b, faces[f].c));
      edge_face.erase(edge_key(faces[f].c, faces[f].a));
    }
    for (auto [a, b] : horizon) add_face(a, b, pi);
  }
  for (const auto& f : faces) {
    if (f.alive) faces_.push_back({f.normal, f.offset});
  }
}

void ConvexHull3::build_planar(std::span<const Vec3> points,
                               const Vec3& normal) {
  planar_ = true;
  support_ = {normal, dot(normal, points[0])};
  Vec3 e1 = std::abs(normal.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  e1 = e1 - dot(e1, normal) * normal;
  e1 = (1.0 / norm(e1)) * e1;
  const Vec3 e2 = cross(normal, e1);

  struct P2 {
    double x, y;
    int i;
  };
  std::vector<P2> q;
  q.reserve(points.size());
  for (int i = 0; i < static_cast<int>(points.size()); ++i) {
    q.push_back({dot(points[i], e1), dot(points[i], e2), i});
  }
  std::sort(q.begin(), q.end(), [](const P2& a, const P2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  auto turn = [](const P2& o, const P2& a, const P2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  };
  // Andrew's monotone chain, counter-clockwise.
  std::vector<P2> hull(2 * q.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    while (k >= 2 && turn(hull[k - 2], hull[k - 1], q[i]) <= 0.0) --k;
    hull[k++] = q[i];
  }
  for (std::size_t i = q.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && turn(hull[k - 2], hull[k - 1], q[i]) <= 0.0) --k;
    hull[k++] = q[i];
  }
  hull.resize(k > 1 ? k - 1 : k);

  if (hull.size() == 1) {
    // Single point: four half-planes through it.
    for (const Vec3& d : {e1, -e1, e2, -e2}) {
      edges_.push_back({d, dot(d, points[hull[0].i])});
    }
    return;
  }
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const P2& a = hull[i];
    const P2& b = hull[(i + 1) % hull.size()];
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double len = std::hypot(dx, dy);
    if (len == 0.0) continue;
    // Outward normal of a counter-clockwise edge is (dy, -dx).
    const Vec3 out = (1.0 / len) * (dy * e1 - dx * e2);
    edges_.push_back({out, dot(out, points[a.i])});
  }
}

double ConvexHull3::signed_distance(const Vec3& p) const {
  double d = -std::numeric_limits<double>::infinity();
  if (planar_) {
    for (const auto& e : edges_) d = std::max(d, dot(e.normal, p) - e.offset);
    return std::max(d, std::abs(dot(support_.normal, p) - support_.offset));
  }
  for (const auto& f : faces_) d = std::max(d, dot(f.normal, p) - f.offset);
  return d;
}

double convex_hull_check(const Region& component) {
  if (component.empty()) {
    throw Error(ErrorKind::argument, "convex hull check of an empty component");
  }
  const SurfaceMesh& mesh = component.mesh();
  std::vector<Vec3> boundary;
  for (Index v : component.boundary_vertices()) {
    boundary.push_back(mesh.vertex(v).position);
  }
  const ConvexHull3 hull(boundary);
  double worst = 0.0;
  for (Index v : component.interior_vertices()) {
    worst = std::max(worst, hull.signed_distance(mesh.vertex(v).position));
  }
  return worst;
}

}  // namespace minlab
