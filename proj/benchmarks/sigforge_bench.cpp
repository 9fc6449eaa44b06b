/* Copyright 2026 The Sigforge Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <benchmark/benchmark.h>

#include "sigforge/augmentations.hpp"
#include "sigforge/dataset.hpp"
#include "sigforge/fft.hpp"
#include "sigforge/impairments.hpp"
#include "sigforge/measurement.hpp"
#include "sigforge/modulators.hpp"
#include "sigforge/pipeline.hpp"

namespace sigforge {
namespace {

void BM_CleanClass(benchmark::State& state) {
  const int cls = static_cast<int>(state.range(0));
  std::uint64_t i = 0;
  for (auto _ : state) {
    RngStream rng = derive_stream(1, i++);
    benchmark::DoNotOptimize(mod::gen_clean(cls, rng).frame.vector().data());
  }
  state.SetLabel(std::string(class_info(cls).name));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_CleanClass)->Arg(4)->Arg(24)->Arg(28)->Arg(45)->Arg(52);

void BM_ImpairedExample(benchmark::State& state) {
  data::DatasetConfig c;
  c.variant = data::Variant::kImpairedTrain;
  c.count = 1u << 30;
  std::uint64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(data::generate_example(data::plan_item(c, i++), c).frame.vector().data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ImpairedExample);

void BM_Resample(benchmark::State& state) {
  RngStream rng(2);
  const ComplexFrame x = mod::gen_clean(8, rng).frame;
  for (auto _ : state) benchmark::DoNotOptimize(impair::random_resample(x, 0.913).vector().data());
}
BENCHMARK(BM_Resample);

void BM_Fft(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<Sample> x(n, Sample(1.0, -0.5));
  for (auto _ : state) benchmark::DoNotOptimize(dsp::fft(x).data());
}
BENCHMARK(BM_Fft)->Arg(256)->Arg(360)->Arg(4096);

void BM_WelchPsd(benchmark::State& state) {
  RngStream rng(3);
  const ComplexFrame x = mod::gen_clean(30, rng).frame;
  for (auto _ : state) benchmark::DoNotOptimize(measure::welch_psd(x).density.data());
}
BENCHMARK(BM_WelchPsd);

void BM_TrainingPipeline(benchmark::State& state) {
  RngStream src(4);
  const ComplexFrame x = mod::gen_clean(17, src).frame;
  const aug::Pipeline p = aug::Pipeline::training_default();
  std::uint64_t i = 0;
  for (auto _ : state) {
    RngStream rng = derive_stream(5, i++);
    benchmark::DoNotOptimize(p.apply(x, rng).vector().data());
  }
}
BENCHMARK(BM_TrainingPipeline);

}  // namespace
}  // namespace sigforge

BENCHMARK_MAIN();
