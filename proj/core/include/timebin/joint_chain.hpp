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

// joint_chain.hpp: full pure state of the system and a finite train of time bins

#pragma once

#include "timebin/kraus.hpp"
#include "timebin/operator.hpp"

#include <cstddef>

namespace timebin {

/// Largest number of amplitudes init_chain will allocate.
inline constexpr std::size_t kMaxChainAmplitudes = std::size_t{1} << 22;

/// Pure state on system x bin_0 x ... x bin_{N-1}. Bins at index >= cursor
/// have not interacted yet and are in vacuum.
struct ChainState {
    StateVector vec;
    std::size_t cursor = 0;
    std::size_t n_bins = 0;
    std::size_t sys_dim = 0;
    std::size_t bin_dim = 0;
    DensityMatrix initial_system;  // reference input for the Markov comparison
};

/// sys_state x |0...0>. Throws NumericGuardError when the vector would exceed
/// kMaxChainAmplitudes and std::invalid_argument for n_bins == 0 or an
/// unnormalized system state.
ChainState init_chain(const StateVector& sys_state, std::size_t n_bins, std::size_t n_max);

/// Applies U (dims [sys_dim, bin_dim]) to the system and the bin at the
/// cursor, then advances the cursor. Throws std::out_of_range when every bin
/// has been used.
ChainState step_chain(ChainState state, const Operator& U);

/// In-place variant of step_chain.
void advance_chain(ChainState& state, const Operator& U);

/// Partial trace over all bins.
DensityMatrix reduced_system(const ChainState& state);

struct FactorizationReport {
    double entropy = 0.0;        // system-field entanglement entropy, nats
    double markov_defect = 0.0;  // max|rho_chain - rho_kraus| at the same step
};

/// Compares the reduced chain state with `cursor` applications of `family`
/// to the initial system state.
FactorizationReport factorization_report(const ChainState& state, const KrausFamily& family);

/// Same comparison against an already computed Kraus-iteration state.
FactorizationReport factorization_report(const ChainState& state, const DensityMatrix& kraus_reference);

/// Largest amplitude on any basis state with an excitation in a bin at index
/// >= cursor.
double untouched_bin_leakage(const ChainState& state);

}  // namespace timebin
