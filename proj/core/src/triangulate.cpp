#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "minlab/error.hpp"
#include "minlab/mesh.hpp"
#include "minlab/parallel.hpp"

namespace minlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// One row of the structured layout: a closed ring (disk, catenoid) or an
// open column (helicoid) of `count` vertices.
struct Row {
  double coord = 0.0;   // ring radius (disk), u (catenoid, helicoid)
  double extent = 0.0;  // half-length in v (helicoid columns only)
  std::size_t count = 0;
};

struct Layout {
  bool center = false;  // disk: one extra vertex at the origin
  bool closed = true;   // rows are closed rings
  std::vector<Row> rows;

  std::size_t vertex_count() const {
    std::size_t n = center ? 1 : 0;
    for (const auto& r : rows) n += r.count;
    return n;
  }
};

// max over sampled angles of sqrt(lambda) on the circle |z| = t.
double ring_metric(const ImmersionSpec& spec, double t) {
  constexpr int kAngles = 64;
  double g = 0.0;
  for (int a = 0; a < kAngles; ++a) {
    const double th = kTwoPi * a / kAngles;
    g = std::max(g, std::sqrt(evaluate(spec, {t * std::cos(th),
                                              t * std::sin(th)}).lambda));
  }
  return g;
}

std::size_t ceil_count(double x, std::size_t minimum) {
  if (!std::isfinite(x) || x > 1e15) return static_cast<std::size_t>(1e15);
  return std::max(minimum, static_cast<std::size_t>(std::ceil(x - 1e-9)));
}

Layout disk_layout(const ImmersionSpec& spec, double rho, double h) {
  // Ambient radial arc length S(t) = int_0^t g, tabulated by trapezoids.
  constexpr int kSamples = 4096;
  std::vector<double> t(kSamples + 1), g(kSamples + 1), s(kSamples + 1, 0.0);
  for (int i = 0; i <= kSamples; ++i) {
    t[i] = rho * i / kSamples;
    g[i] = ring_metric(spec, t[i]);
    if (i > 0) s[i] = s[i - 1] + 0.5 * (g[i] + g[i - 1]) * (t[i] - t[i - 1]);
  }
  const std::size_t n = ceil_count(s.back() / h, 1);
  if (n > 100'000'000) {
    throw Error(ErrorKind::resource, "ring count overflow for target_h");
  }
  Layout layout;
  layout.center = true;
  layout.closed = true;
  int k = 0;
  for (std::size_t j = 1; j <= n; ++j) {
    const double target = s.back() * static_cast<double>(j) / n;
    while (k < kSamples && s[k + 1] < target) ++k;
    double r = rho;
    if (j < n) {
      const double w = (target - s[k]) / (s[k + 1] - s[k]);
      r = t[k] + w * (t[k + 1] - t[k]);
    }
    Row row;
    row.coord = r;
    row.count = ceil_count(kTwoPi * r * ring_metric(spec, r) / h, 6);
    layout.rows.push_back(row);
  }
  return layout;
}

Layout catenoid_layout(double rho, double h) {
  const std::size_t n = ceil_count(std::sinh(rho) / h, 1);
  Layout layout;
  layout.closed = true;
  const auto ni = static_cast<long>(n);
  for (long i = -ni; i <= ni; ++i) {
    Row row;
    row.coord = std::asinh(std::sinh(rho) * static_cast<double>(i) /
                           static_cast<double>(n));
    row.count = ceil_count(kTwoPi * std::cosh(row.coord) / h, 8);
    layout.rows.push_back(row);
  }
  return layout;
}

Layout helicoid_layout(double rho, double h) {
  // Columns sit at sinh(u) = i rho / n and are clipped to
  // sinh^2 u + v^2 <= rho^2, the preimage of the closed ball of radius rho.
  const long n = std::max<long>(static_cast<long>(std::ceil(rho / h)), 2);
  Layout layout;
  layout.closed = false;
  for (long i = -n; i <= n; ++i) {
    const double sh = rho * static_cast<double>(i) / static_cast<double>(n);
    Row row;
    row.coord = std::asinh(sh);
    row.extent = std::abs(i) == n ? 0.0 : std::sqrt(rho * rho - sh * sh);
    std::size_t segments = 0;
    if (row.extent > 0.0) {
      segments = ceil_count(2.0 * row.extent * std::cosh(row.coord) / h, 2);
      segments += segments % 2;  // keeps v = 0 on every column
    }
    row.count = segments + 1;
    layout.rows.push_back(row);
  }
  return layout;
}

Layout make_layout(const ImmersionSpec& spec, double rho, double h) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw Error(ErrorKind::argument, "parameter radius must be positive");
  }
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw Error(ErrorKind::argument, "target_h must be positive");
  }
  switch (spec.kind()) {
    case SurfaceKind::plane:
    case SurfaceKind::enneper:
      return disk_layout(spec, rho, h);
    case SurfaceKind::catenoid:
      return catenoid_layout(rho, h);
    case SurfaceKind::helicoid:
      return helicoid_layout(rho, h);
  }
  return {};
}

// Stitch two rows by walking both in order of their fractional positions.
void zip_rows(std::span<const Index> a, std::span<const Index> b, bool closed,
              std::vector<Triangle>& out) {
  const std::size_t na = closed ? a.size() : a.size() - 1;
  const std::size_t nb = closed ? b.size() : b.size() - 1;
  auto at = [closed](std::span<const Index> row, std::size_t i) {
    return closed ? row[i % row.size()] : row[i];
  };
  std::size_t i = 0, j = 0;
  while (i < na || j < nb) {
    const bool advance_a =
        j == nb || (i < na && static_cast<double>(i + 1) * nb <=
                                  static_cast<double>(j + 1) * na);
    if (advance_a) {
      out.push_back({at(a, i), at(a, i + 1), at(b, j)});
      ++i;
    } else {
      out.push_back({at(a, i), at(b, j + 1), at(b, j)});
      ++j;
    }
  }
}

struct FlipMesh {
  const std::vector<Vec2>& params;
  bool periodic;
  std::vector<Triangle>& tris;
  std::vector<Triangle> nbr;

  Vec2 lift(Vec2 ref, Vec2 p) const {
    if (!periodic) return p;
    p.v -= kTwoPi * std::round((p.v - ref.v) / kTwoPi);
    return p;
  }

  void build() {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> half;
    half.reserve(3 * tris.size());
    for (std::size_t t = 0; t < tris.size(); ++t) {
      for (int e = 0; e < 3; ++e) {
        Index a = tris[t][(e + 1) % 3], b = tris[t][(e + 2) % 3];
        if (a > b) std::swap(a, b);
        half.push_back({(std::uint64_t{a} << 32) | b, 3 * t + e});
      }
    }
    std::sort(half.begin(), half.end());
    nbr.assign(tris.size(), Triangle{kNoIndex, kNoIndex, kNoIndex});
    for (std::size_t i = 0; i + 1 < half.size(); ++i) {
      if (half[i].first != half[i + 1].first) continue;
      const auto h0 = half[i].second, h1 = half[i + 1].second;
      nbr[h0 / 3][h0 % 3] = static_cast<Index>(h1 / 3);
      nbr[h1 / 3][h1 % 3] = static_cast<Index>(h0 / 3);
    }
  }

  int corner_facing(Index n, Index t) const {
    for (int e = 0; e < 3; ++e) {
      if (nbr[n][e] == t) return e;
    }
    return -1;
  }

  void relink(Index outer, Index from, Index to) {
    if (outer == kNoIndex) return;
    for (auto& x : nbr[outer]) {
      if (x == from) {
        x = to;
        return;
      }
    }
  }

  // Flips the edge opposite corner e of t when the two opposite angles sum
  // beyond pi. Returns true when a flip happened.
  bool maybe_flip(Index t, int e) {
    const Index n = nbr[t][e];
    if (n == kNoIndex) return false;
    const int f = corner_facing(n, t);
    if (f < 0) return false;
    const Index ia = tris[t][e], ib = tris[t][(e + 1) % 3],
                ic = tris[t][(e + 2) % 3], id = tris[n][f];
    if (id == ia) return false;
    const Vec2 a = params[ia];
    const Vec2 b = lift(a, params[ib]), c = lift(a, params[ic]),
               d = lift(a, params[id]);
    const double cot_a = dot(b - a, c - a) / cross(b - a, c - a);
    const double cot_d = dot(c - d, b - d) / cross(c - d, b - d);
    if (!(cot_a + cot_d < -1e-10)) return false;
    if (!(cross(b - a, d - a) > 0.0) || !(cross(d - a, c - a) > 0.0)) {
      return false;
    }
    const Index n_ab = nbr[t][(e + 2) % 3];  // opposite c
    const Index n_ca = nbr[t][(e + 1) % 3];  // opposite b
    // n = (id, ic, ib) in cyclic order starting at f.
    const Index n_dc = nbr[n][(f + 2) % 3];  // opposite ib
    const Index n_bd = nbr[n][(f + 1) % 3];  // opposite ic
    tris[t] = {ia, ib, id};
    tris[n] = {ia, id, ic};
    nbr[t] = {n_bd, n, n_ab};
    nbr[n] = {n_dc, n_ca, t};
    relink(n_bd, n, t);
    relink(n_ca, t, n);
    return true;
  }

  void run() {
    build();
    std::vector<std::pair<Index, int>> stack;
    for (Index t = 0; t < tris.size(); ++t) {
      for (int e = 0; e < 3; ++e) {
        if (nbr[t][e] != kNoIndex && t < nbr[t][e]) stack.push_back({t, e});
      }
    }
    std::size_t budget = 64 * tris.size() + 64;
    while (!stack.empty() && budget-- > 0) {
      const auto [t, e] = stack.back();
      stack.pop_back();
      if (!maybe_flip(t, e)) continue;
      const Index n = nbr[t][1];
      for (int k = 0; k < 3; ++k) {
        if (k != 1) stack.push_back({t, k});
        if (k != 2) stack.push_back({n, k});
      }
    }
  }
};

}  // namespace

std::size_t triangulate_vertex_count(const ImmersionSpec& spec, double rho,
                                     double target_h) {
  return make_layout(spec, rho, target_h).vertex_count();
}

SurfaceMesh triangulate(const ImmersionSpec& spec, double rho, double target_h,
                        const TriangulateOptions& options) {
  const Layout layout = make_layout(spec, rho, target_h);
  const std::size_t count = layout.vertex_count();
  if (count > options.max_vertices) {
    throw Error(ErrorKind::resource,
                "triangulation needs " + std::to_string(count) +
                    " vertices, cap is " + std::to_string(options.max_vertices));
  }

  std::vector<Vec2> params;
  params.reserve(count);
  std::vector<std::vector<Index>> rows(layout.rows.size());
  if (layout.center) params.push_back({0.0, 0.0});
  for (std::size_t r = 0; r < layout.rows.size(); ++r) {
    const Row& row = layout.rows[r];
    for (std::size_t i = 0; i < row.count; ++i) {
      rows[r].push_back(static_cast<Index>(params.size()));
      const double frac = static_cast<double>(i) / static_cast<double>(row.count);
      switch (spec.kind()) {
        case SurfaceKind::plane:
        case SurfaceKind::enneper:
          params.push_back({row.coord * std::cos(kTwoPi * frac),
                            row.coord * std::sin(kTwoPi * frac)});
          break;
        case SurfaceKind::catenoid:
          params.push_back({row.coord, kTwoPi * frac});
          break;
        case SurfaceKind::helicoid: {
          const double segs = static_cast<double>(row.count - 1);
          const double v = segs > 0.0
                               ? -row.extent + 2.0 * row.extent * i / segs
                               : 0.0;
          params.push_back({row.coord, v});
          break;
        }
      }
    }
  }

  std::vector<Triangle> tris;
  if (layout.center) {
    const auto& first = rows.front();
    for (std::size_t i = 0; i < first.size(); ++i) {
      tris.push_back({0, first[i], first[(i + 1) % first.size()]});
    }
  }
  for (std::size_t r = 0; r + 1 < rows.size(); ++r) {
    zip_rows(rows[r], rows[r + 1], layout.closed, tris);
  }

  const bool periodic = spec.periodic_v();
  auto lift = [periodic](Vec2 ref, Vec2 p) {
    if (periodic) p.v -= kTwoPi * std::round((p.v - ref.v) / kTwoPi);
    return p;
  };
  for (auto& tri : tris) {
    const Vec2 a = params[tri[0]];
    const Vec2 b = lift(a, params[tri[1]]), c = lift(a, params[tri[2]]);
    if (cross(b - a, c - a) < 0.0) std::swap(tri[1], tri[2]);
  }

  if (options.delaunay_flips) {
    FlipMesh flipper{params, periodic, tris, {}};
    flipper.run();
  }

  std::vector<MeshVertex> vertices(params.size());
  parallel_for(params.size(), [&](std::size_t i) {
    const JetSample s = evaluate(spec, params[i]);
    vertices[i] = {params[i], s.position, s.lambda};
  });
  return SurfaceMesh(spec, target_h, periodic, std::move(vertices),
                     std::move(tris));
}

SurfaceMesh triangulate_ball_patch(const ImmersionSpec& spec,
                                   double ambient_radius, double target_h,
                                   const TriangulateOptions& options) {
  return triangulate(spec, param_radius_for_ball(spec, ambient_radius),
                     target_h, options);
}

}  // namespace minlab
