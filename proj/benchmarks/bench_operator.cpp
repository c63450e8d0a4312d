// Copyright 2026 The timebin Authors
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

#include "timebin/model.hpp"
#include "timebin/operator.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_CoarseMap(benchmark::State& state) {
    const auto sys = timebin::two_level_system(0.0, 1.0);
    const timebin::CoarseParams p{1.0, 0.01, static_cast<std::size_t>(state.range(0))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(timebin::coarse_map(sys, p));
    }
}
BENCHMARK(BM_CoarseMap)->DenseRange(1, 4);

void BM_PartialTrace(benchmark::State& state) {
    const std::size_t bins = static_cast<std::size_t>(state.range(0));
    timebin::Dims dims{2};
    dims.insert(dims.end(), bins, 2);
    const auto n = static_cast<Eigen::Index>(timebin::total_dim(dims));
    const timebin::Operator a(timebin::Matrix::Random(n, n), dims);
    const std::size_t keep[] = {0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(timebin::partial_trace(a, keep));
    }
}
BENCHMARK(BM_PartialTrace)->DenseRange(2, 8, 2);

}  // namespace
