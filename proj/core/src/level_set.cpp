#include "minlab/level_set.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_map>

#include "minlab/error.hpp"
#include "minlab/harmonic.hpp"

namespace minlab {

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;

  std::size_t add() {
    parent.push_back(parent.size());
    return parent.size() - 1;
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::uint64_t edge_key(Index a, Index b) {
  if (a > b) std::swap(a, b);
  return (std::uint64_t{a} << 32) | b;
}

}  // namespace

LevelSet level_set(const ScalarField& f, double s, const Region& region) {
  if (!std::isfinite(s)) throw Error(ErrorKind::argument, "level must be finite");
  f.require_on(region);
  const SurfaceMesh& mesh = region.mesh();
  const double bump = 1e-14 * (1.0 + std::abs(s));
  auto value = [&](Index v) {
    const double x = f[v];
    return x == s ? s + bump : x;
  };

  LevelSet out;
  out.level = s;
  DisjointSets sets;
  std::vector<std::uint8_t> on_boundary;
  std::unordered_map<std::uint64_t, std::size_t> edge_owner;

  for (Index t : region.triangles()) {
    const auto& tri = mesh.triangle(t);
    const double val[3] = {value(tri[0]), value(tri[1]), value(tri[2])};
    Vec3 ends[2];
    int found = 0;
    bool boundary = false;
    std::uint64_t keys[2] = {0, 0};
    for (int e = 0; e < 3 && found < 2; ++e) {
      const int i = (e + 1) % 3, j = (e + 2) % 3;
      if ((val[i] > s) == (val[j] > s)) continue;
      const double w = (s - val[i]) / (val[j] - val[i]);
      const Vec3 pi = mesh.vertex(tri[i]).position;
      const Vec3 pj = mesh.vertex(tri[j]).position;
      ends[found] = pi + w * (pj - pi);
      keys[found] = edge_key(tri[i], tri[j]);
      boundary = boundary || region.is_boundary_edge(t, e);
      ++found;
    }
    if (found != 2) continue;

    const std::size_t id = sets.add();
    on_boundary.push_back(boundary ? 1 : 0);
    out.segments.push_back({ends[0], ends[1], t, -1});
    for (auto key : keys) {
      auto [it, inserted] = edge_owner.try_emplace(key, id);
      if (!inserted) sets.unite(id, it->second);
    }
  }

  std::vector<int> label(out.segments.size(), -1);
  for (std::size_t i = 0; i < out.segments.size(); ++i) {
    const std::size_t root = sets.find(i);
    if (label[root] < 0) {
      label[root] = static_cast<int>(out.components.size());
      out.components.emplace_back();
    }
    auto& seg = out.segments[i];
    seg.component = label[root];
    auto& comp = out.components[static_cast<std::size_t>(seg.component)];
    const double len = norm(seg.b - seg.a);
    comp.length += len;
    comp.touches_boundary = comp.touches_boundary || on_boundary[i];
    comp.segments.push_back(i);
  }
  for (const auto& c : out.components) out.total_length += c.length;
  return out;
}

CoareaCheck coarea_check(const ScalarField& f, const Region& region,
                         int n_levels) {
  if (n_levels < 16) {
    throw Error(ErrorKind::argument,
                "coarea check needs >= 16 levels, got " + std::to_string(n_levels));
  }
  const double lo = field_min(f, region), hi = field_max(f, region);
  if (!(hi > lo)) {
    throw Error(ErrorKind::degenerate,
                "coarea check on a constant field (both sides vanish)");
  }
  CoareaCheck c;
  c.levels = n_levels;
  c.gradient_l1 = gradient_l1(f, region);
  const double step = (hi - lo) / n_levels;
  for (int i = 0; i < n_levels; ++i) {
    c.level_integral += level_set(f, lo + (i + 0.5) * step, region).total_length;
  }
  c.level_integral *= step;
  c.relative_error = std::abs(c.level_integral - c.gradient_l1) /
                     std::max(c.gradient_l1, 1e-300);
  return c;
}

double nodal_length(const ScalarField& f, const Region& region) {
  return level_set(f, 0.0, region).total_length;
}

}  // namespace minlab
