#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "voromink/spatial.hpp"
#include "voromink/voronoi.hpp"

using namespace voromink;

namespace {

PointCloud make_cloud(int d, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> coords;
  coords.reserve(static_cast<std::size_t>(n) * d);
  for (int i = 0; i < n * d; ++i) coords.push_back(u(rng));
  return PointCloud(d, std::move(coords));
}

void BM_NearestNeighbor(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  const PointCloud cloud = make_cloud(d, n, 7);
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  std::vector<double> queries(1024 * d);
  for (double& q : queries) q = u(rng);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cloud.nearest(queries.data() + (i % 1024) * d));
    ++i;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_NearestNeighbor)
    ->Args({2, 1000})
    ->Args({2, 100000})
    ->Args({3, 100000});

void BM_TreeBuild(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> coords(static_cast<std::size_t>(n) * 2);
  for (double& c : coords) c = u(rng);
  for (auto _ : state) {
    PointCloud cloud(2, coords);
    benchmark::DoNotOptimize(cloud.size());
  }
}
BENCHMARK(BM_TreeBuild)->Arg(10000)->Arg(100000);

void BM_VoronoiSeries(benchmark::State& state) {
  const int n_radii = static_cast<int>(state.range(0));
  const PointCloud cloud = make_cloud(2, 2000, 23);
  VoronoiSchedule sched;
  for (int i = 1; i <= n_radii; ++i)
    sched.radii.push_back(0.5 * i / n_radii);
  sched.spacing = 0.01;
  sched.seed = 5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_series(cloud, sched, 0, 0));
  }
}
BENCHMARK(BM_VoronoiSeries)->Arg(1)->Arg(10)->Arg(50)
    ->Unit(benchmark::kMillisecond);

void BM_VoronoiMultiPair(benchmark::State& state) {
  const PointCloud cloud = make_cloud(2, 2000, 23);
  VoronoiSchedule sched;
  for (int i = 1; i <= 10; ++i) sched.radii.push_back(0.05 * i);
  sched.spacing = 0.01;
  sched.seed = 5;
  const std::vector<std::pair<int, int>> rs = {
      {0, 0}, {1, 0}, {0, 1}, {0, 2}, {2, 0}, {1, 1}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_series_multi(cloud, sched, rs));
  }
}
BENCHMARK(BM_VoronoiMultiPair)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
