#include <benchmark/benchmark.h>

#include <random>

#include "ctrack/association.hpp"
#include "ctrack/heatmap.hpp"
#include "ctrack/metrics.hpp"
#include "ctrack/simulator.hpp"
#include "ctrack/tracker.hpp"

namespace {

using namespace ctrack;

struct Frame {
  std::vector<Detection> dets;
  std::vector<Tracklet> tracks;
};

// n detections near n tracklets, all of one class
Frame make_frame(std::size_t n) {
  std::mt19937_64 rng(n);
  std::uniform_real_distribution<double> pos(0, 900), jitter(-3, 3);
  Frame f;
  for (std::size_t k = 0; k < n; ++k) {
    const Point2 c{pos(rng), pos(rng)};
    const Size2 s{40, 100};
    f.tracks.push_back({static_cast<int>(k + 1), c, box_from_center_size(c, s), 1, 0.9, 0});
    Detection d;
    d.center = {c.x + 4, c.y};
    d.size = s;
    d.disp = {4 + jitter(rng), jitter(rng)};
    const BoxLTRB prev = box_from_center_size({c.x + jitter(rng), c.y + jitter(rng)}, s);
    d.tracked_size = TrackedSizeLTRB{prev.left, prev.top, prev.right, prev.bottom};
    d.confidence = 0.5 + 0.5 * pos(rng) / 900;
    d.iou_pred = 0.5;
    f.dets.push_back(d);
  }
  return f;
}

void BM_IouCost(benchmark::State& state) {
  const Frame f = make_frame(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(iou_cost(f.dets, f.tracks, TrackedSizeVariant::ltrb));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_IouCost)->RangeMultiplier(4)->Range(4, 256)->Complexity(benchmark::oNSquared);

void BM_DisplacementCost(benchmark::State& state) {
  const Frame f = make_frame(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(displacement_cost(f.dets, f.tracks));
}
BENCHMARK(BM_DisplacementCost)->RangeMultiplier(4)->Range(4, 256);

void BM_GreedyMatch(benchmark::State& state) {
  const Frame f = make_frame(static_cast<std::size_t>(state.range(0)));
  const CostMatrix cost = displacement_cost(f.dets, f.tracks);
  const auto order = confidence_order(f.dets);
  for (auto _ : state) benchmark::DoNotOptimize(greedy_match(cost, order));
}
BENCHMARK(BM_GreedyMatch)->RangeMultiplier(4)->Range(4, 256);

void BM_Associate(benchmark::State& state) {
  const Frame f = make_frame(64);
  const auto strategy = static_cast<Strategy>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(associate(strategy, f.dets, f.tracks));
  state.SetLabel(std::string(to_string(strategy)));
}
BENCHMARK(BM_Associate)->DenseRange(0, 4);

std::vector<RenderObject> scene(int n) {
  std::mt19937_64 rng(static_cast<unsigned>(n));
  std::uniform_real_distribution<double> x(0, 959), y(0, 543), s(10, 120);
  std::vector<RenderObject> out;
  for (int i = 0; i < n; ++i) out.push_back({{x(rng), y(rng)}, {s(rng), 2.5 * s(rng)}, 1});
  return out;
}

void BM_RenderHeatmap(benchmark::State& state) {
  const auto objs = scene(static_cast<int>(state.range(0)));
  const GridSpec grid;
  for (auto _ : state) benchmark::DoNotOptimize(render_heatmap(objs, grid));
}
BENCHMARK(BM_RenderHeatmap)->Arg(1)->Arg(10)->Arg(50);

void BM_ExtractPeaks(benchmark::State& state) {
  const Heatmap hm = render_heatmap(scene(static_cast<int>(state.range(0))), GridSpec{}).heatmap;
  for (auto _ : state) benchmark::DoNotOptimize(extract_peaks(hm, 0.5));
}
BENCHMARK(BM_ExtractPeaks)->Arg(1)->Arg(10)->Arg(50);

struct Sequence {
  Scenario truth;
  PredictionFile preds;
  std::vector<TrackRecord> tracks;
};

Sequence crossing(std::uint64_t seed) {
  const ScenarioConfig cfg = crossing_scenario(TrackedSizeVariant::ltrb, seed);
  Sequence s{generate(cfg), {}, {}};
  s.preds = perturb(s.truth.predictions, NoiseConfig::moderate(), {960, 544}, seed);
  s.tracks = run_sequence(s.preds.frames, TrackerConfig{});
  return s;
}

void BM_RunSequence(benchmark::State& state) {
  const Sequence s = crossing(1);
  TrackerConfig cfg;
  cfg.strategy = static_cast<Strategy>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_sequence(s.preds.frames, cfg));
  state.SetLabel(std::string(to_string(cfg.strategy)));
}
BENCHMARK(BM_RunSequence)->DenseRange(0, 4);

void BM_ClearMot(benchmark::State& state) {
  const Sequence s = crossing(1);
  for (auto _ : state) benchmark::DoNotOptimize(clear_mot(s.truth.gt, s.tracks));
}
BENCHMARK(BM_ClearMot);

void BM_Idf1(benchmark::State& state) {
  const Sequence s = crossing(1);
  for (auto _ : state) benchmark::DoNotOptimize(idf1(s.truth.gt, s.tracks));
}
BENCHMARK(BM_Idf1);

}  // namespace

BENCHMARK_MAIN();
