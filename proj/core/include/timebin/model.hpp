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

// model.hpp: system operators, time-bin Fock space, and the coarse-grained bin map

#pragma once

#include "timebin/operator.hpp"

#include <cstddef>
#include <string>

namespace timebin {

/// A local quantum system: its Hamiltonian and the operator that couples it
/// to the waveguide.
struct SystemModel {
    std::size_t dim = 0;
    Operator lowering;     // coupling operator (sigma for emission, sigma^dag sigma for dephasing)
    Operator hamiltonian;  // H_sys, Hermitian
    std::string label;

    /// Throws std::invalid_argument if the shapes or Hermiticity are off.
    void validate() const;
};

/// Truncated single-bin oscillator space.
struct BinSpace {
    std::size_t n_max = 0;
    Operator annihilate;  // Delta B restricted to {|0>, ..., |n_max>}

    std::size_t dim() const noexcept { return n_max + 1; }
};

/// Coupling rate, bin width, and bin truncation. Times are in units of 1/gamma.
struct CoarseParams {
    double gamma = 1.0;
    double dt = 0.01;
    std::size_t n_max = 2;

    void validate() const;
};

/// Two-level emitter, basis {|g>, |e>}: sigma = |g><e|,
/// H = omega0 sigma^dag sigma + drive (sigma + sigma^dag).
SystemModel two_level_system(double omega0, double drive);

/// Harmonic oscillator truncated to `dim` levels with lowering operator a,
/// H = omega0 a^dag a + drive (a + a^dag).
SystemModel truncated_oscillator(std::size_t dim, double omega0, double drive);

/// Same Hamiltonian, coupling operator replaced by sigma^dag sigma.
SystemModel dephasing_variant(const SystemModel& base);

/// Ladder operator on the truncated bin: annihilate|m> = sqrt(m)|m-1>.
BinSpace make_bin_space(std::size_t n_max);

/// Exponent of the single-bin map on system x bin:
///   G = -i dt H_sys x 1 + sqrt(gamma dt) (L x dB^dag - L^dag x dB).
Operator bin_generator(const SystemModel& sys, const CoarseParams& p);

/// U = exp(G): the time-bin map with the time ordering inside the bin dropped.
Operator coarse_map(const SystemModel& sys, const CoarseParams& p);

/// Probe of the error made by dropping time ordering within a bin.
///
/// Compares the single-bin channel at width dt with `subdivisions`
/// consecutive sub-bin channels of width dt/subdivisions, each sub-bin
/// starting in vacuum and traced out afterwards, applied to the top basis
/// state of the system. Returns the max-norm difference of the two output
/// density matrices.
double ordering_residual(const SystemModel& sys, const CoarseParams& p, int subdivisions);

/// sigma^dag sigma x 1 + 1 x dB^dag dB on system x bin.
Operator excitation_number(const SystemModel& sys, const BinSpace& bin);

}  // namespace timebin
