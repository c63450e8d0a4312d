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

#include "timebin/joint_chain.hpp"
#include "timebin/kraus.hpp"
#include "timebin/lindblad.hpp"
#include "timebin/model.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_IterateChannel(benchmark::State& state) {
    const auto sys = timebin::two_level_system(0.0, 1.0);
    const auto family = timebin::kraus_family(sys, timebin::CoarseParams{1.0, 0.01, 2});
    const auto rho0 = timebin::DensityMatrix::basis(2, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(timebin::iterate_channel(family, rho0, static_cast<std::size_t>(state.range(0))));
    }
}
BENCHMARK(BM_IterateChannel)->Range(100, 10000);

void BM_IntegrateRk4(benchmark::State& state) {
    const auto model = timebin::lindblad_model(timebin::two_level_system(0.0, 1.0), 1.0);
    const auto rho0 = timebin::DensityMatrix::basis(2, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(timebin::integrate_rk4(model, rho0, 0.01, static_cast<std::size_t>(state.range(0))));
    }
}
BENCHMARK(BM_IntegrateRk4)->Range(100, 10000);

void BM_JointChainSweep(benchmark::State& state) {
    const auto sys = timebin::two_level_system(0.0, 0.0);
    const std::size_t bins = static_cast<std::size_t>(state.range(0));
    const auto U = timebin::coarse_map(sys, timebin::CoarseParams{1.0, 0.05, 1});
    const auto excited = timebin::StateVector::basis({2}, 1);
    for (auto _ : state) {
        auto chain = timebin::init_chain(excited, bins, 1);
        for (std::size_t k = 0; k < bins; ++k) {
            timebin::advance_chain(chain, U);
        }
        benchmark::DoNotOptimize(timebin::reduced_system(chain));
    }
}
BENCHMARK(BM_JointChainSweep)->DenseRange(4, 16, 4);

}  // namespace
