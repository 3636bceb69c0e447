// Copyright 2026 The rgbtfuse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "rgbtfuse/fusion.hpp"
#include "rgbtfuse/metrics.hpp"
#include "rgbtfuse/simulator.hpp"

namespace
{

using namespace rgbtfuse;

struct Workload
{
  DatasetManifest manifest;
  SequenceResults results;
};

Workload make_workload(std::size_t sequences, std::size_t frames)
{
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> pos(0.0, 400.0);
  std::uniform_real_distribution<double> jitter(-15.0, 15.0);
  std::vector<ManifestEntry> entries;
  SequenceResults results;
  for (std::size_t j = 0; j < sequences; ++j) {
    std::vector<FrameTruth> gt;
    std::vector<FramePrediction> pred;
    for (std::size_t i = 0; i < frames; ++i) {
      const Box b = make_box(pos(rng), pos(rng), 40, 30);
      gt.push_back(FrameTruth::present(b));
      pred.push_back(FramePrediction::present(make_box(b.x() + jitter(rng), b.y() + jitter(rng), 40, 30)));
    }
    const std::string id = "s" + std::to_string(j);
    results[id] = std::move(pred);
    entries.push_back({SequenceAnnotation(id, Subset::Unspecified, std::move(gt)), id + ".txt"});
  }
  return {DatasetManifest("bench", std::move(entries)), std::move(results)};
}

void BM_BenchmarkScores(benchmark::State & state)
{
  const auto w = make_workload(static_cast<std::size_t>(state.range(0)), 500);
  const MetricConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(benchmark_scores(w.manifest, w.results, cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 500);
}
BENCHMARK(BM_BenchmarkScores)->Arg(10)->Arg(100);

void BM_FuseStreams(benchmark::State & state)
{
  const std::size_t t = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ExpertStream s[3] = {{Expert::Rgb, {}}, {Expert::Tir, {}}, {Expert::Rgbt, {}}};
  for (std::size_t i = 0; i < t; ++i) {
    for (auto & stream : s) {
      stream.predictions.push_back(FramePrediction::present(make_box(u(rng), u(rng), 10, 10), u(rng)));
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(fuse_streams(s[0], s[1], s[2]));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FuseStreams)->Arg(1000)->Arg(100000);

void BM_RunScenario(benchmark::State & state)
{
  ScenarioConfig cfg;
  cfg.sequences = static_cast<std::size_t>(state.range(0));
  cfg.frames = 200;
  cfg.rgb.degraded_fraction = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_scenario(cfg));
  }
}
BENCHMARK(BM_RunScenario)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
