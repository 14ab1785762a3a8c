#include <benchmark/benchmark.h>

#include "vizstate/bench_gen.hpp"
#include "vizstate/renderer.hpp"
#include "vizstate/similarity.hpp"

namespace {

using namespace vizstate;

FigureSpec fixture(ChartType type, std::uint64_t seed) {
  return generate_figure(type, seed);
}

void BM_ChamferDistance(benchmark::State& state) {
  const auto a = extract_point_cloud(fixture(ChartType::line, 1).traces[0]);
  const auto b = extract_point_cloud(fixture(ChartType::line, 2).traces[0]);
  for (auto _ : state) benchmark::DoNotOptimize(chamfer_distance(a, b));
}
BENCHMARK(BM_ChamferDistance);

void BM_MatchTraces(benchmark::State& state) {
  const auto gt = fixture(ChartType::line, 3);
  const auto pred = fixture(ChartType::line, 4);
  std::vector<PointCloud> a, b;
  for (const auto& t : gt.traces) a.push_back(extract_point_cloud(t));
  for (const auto& t : pred.traces) b.push_back(extract_point_cloud(t));
  for (auto _ : state) benchmark::DoNotOptimize(match_traces(a, b));
}
BENCHMARK(BM_MatchTraces);

void BM_ScoreFigure(benchmark::State& state) {
  const auto gt = fixture(ChartType::line, 5);
  const auto pred = fixture(ChartType::line, 6);
  for (auto _ : state) benchmark::DoNotOptimize(score_figure(gt, pred));
}
BENCHMARK(BM_ScoreFigure);

void BM_GenerateCase(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(generate_case(ChartType::line, ++seed, "bench"));
}
BENCHMARK(BM_GenerateCase);

void BM_RenderSvg(benchmark::State& state) {
  const auto spec = fixture(ChartType::line, 7);
  const auto view = initial_view(spec);
  for (auto _ : state) benchmark::DoNotOptimize(render(spec, view));
}
BENCHMARK(BM_RenderSvg);

}  // namespace

BENCHMARK_MAIN();
