#include <benchmark/benchmark.h>

#include "minlab/analysis.hpp"
#include "minlab/harmonic.hpp"
#include "minlab/level_set.hpp"
#include "minlab/mesh.hpp"

using namespace minlab;

namespace {

double h_of(const benchmark::State& state) { return 1.0 / static_cast<double>(state.range(0)); }

void BM_TriangulateEnneper(benchmark::State& state) {
  const auto spec = ImmersionSpec::enneper(1);
  for (auto _ : state) {
    auto mesh = triangulate_ball_patch(spec, 8.0, h_of(state));
    benchmark::DoNotOptimize(mesh.num_triangles());
    state.counters["vertices"] = static_cast<double>(mesh.num_vertices());
  }
}
BENCHMARK(BM_TriangulateEnneper)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_BallComponent(benchmark::State& state) {
  const auto mesh = triangulate_ball_patch(ImmersionSpec::enneper(1), 8.0, h_of(state));
  const Index root = base_vertex(mesh);
  for (auto _ : state) {
    auto ball = ball_component(mesh, root, 8.0);
    benchmark::DoNotOptimize(ball.num_edges());
  }
}
BENCHMARK(BM_BallComponent)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_SolveDirichlet(benchmark::State& state) {
  const auto mesh = triangulate(ImmersionSpec::plane(), 1.0, h_of(state));
  const auto disk = Region::whole(mesh);
  const auto data = field_from(mesh, [](const MeshVertex& v) {
    return v.param.u * v.param.u * v.param.u - 3.0 * v.param.u * v.param.v * v.param.v;
  });
  for (auto _ : state) {
    auto u = solve_dirichlet(disk, data);
    benchmark::DoNotOptimize(u[0]);
  }
  state.counters["vertices"] = static_cast<double>(mesh.num_vertices());
}
BENCHMARK(BM_SolveDirichlet)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_LevelSet(benchmark::State& state) {
  const auto mesh = triangulate_ball_patch(ImmersionSpec::enneper(1), 4.0, h_of(state));
  const auto ball = ball_component(mesh, base_vertex(mesh), 4.0);
  const auto f = coordinate_field(mesh, 2);
  for (auto _ : state) {
    auto ls = level_set(f, 0.37, ball);
    benchmark::DoNotOptimize(ls.total_length);
  }
}
BENCHMARK(BM_LevelSet)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMicrosecond);

void BM_CoareaCheck(benchmark::State& state) {
  const auto mesh = triangulate_ball_patch(ImmersionSpec::enneper(1), 4.0, 0.05);
  const auto ball = ball_component(mesh, base_vertex(mesh), 4.0);
  const auto f = coordinate_field(mesh, 2);
  for (auto _ : state) {
    auto check = coarea_check(f, ball, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(check.relative_error);
  }
}
BENCHMARK(BM_CoareaCheck)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_DecayCertificate(benchmark::State& state) {
  const auto mesh = triangulate_ball_patch(ImmersionSpec::enneper(1), 16.0, 0.25);
  const Index root = base_vertex(mesh);
  const auto f = coordinate_field(mesh, 2);
  for (auto _ : state) {
    auto cert = decay_certificate(f, root, 4.0, 3.0 * 3.14159265358979);
    benchmark::DoNotOptimize(cert.ratio);
  }
}
BENCHMARK(BM_DecayCertificate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
