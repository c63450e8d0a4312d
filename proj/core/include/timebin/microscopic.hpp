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

// microscopic.hpp: emitter coupled to a discretized frequency continuum, one excitation

#pragma once

#include "timebin/operator.hpp"

#include <cstddef>
#include <vector>

namespace timebin {

/// Uniform grid of n_modes frequencies on [-half_width, half_width],
/// measured from the emitter frequency.
struct FrequencyGrid {
    std::size_t n_modes = 1601;
    double half_width = 20.0;

    void validate() const;
    double spacing() const { return 2.0 * half_width / static_cast<double>(n_modes - 1); }
    double frequency(std::size_t j) const { return -half_width + spacing() * static_cast<double>(j); }
    /// Time after which the finite grid revives: 2 pi / spacing.
    double recurrence_time() const;
};

/// Flat coupling strength g = sqrt(gamma * spacing / (2 pi)).
double mode_coupling(const FrequencyGrid& grid, double gamma);

/// Hamiltonian on span{|e,vac>, |g,1_1>, ..., |g,1_n>} (that order).
/// Diagonal (0, omega_1, ..., omega_n); <g,1_j|H|e,vac> = i g.
Operator build_microscopic(const FrequencyGrid& grid, double gamma);

struct SurvivalSeries {
    std::vector<double> times;
    std::vector<double> survival;  // |c_e(t)|^2
    double max_norm_error = 0.0;   // max | ||psi(t)|| - 1 |
};

/// Evolves c_e(0) = 1 exactly through one Hermitian eigendecomposition and
/// samples |c_e|^2 at t_k = k * t_final / steps, k = 0..steps.
/// Throws NumericGuardError when t_final reaches the grid recurrence time.
SurvivalSeries evolve_microscopic(const Operator& hamiltonian, const FrequencyGrid& grid, double t_final,
                                  std::size_t steps);

/// Least-squares slope of ln(survival) against time over [t_lo, t_hi];
/// the decay rate is its negative.
double fitted_decay_slope(const SurvivalSeries& series, double t_lo, double t_hi);

}  // namespace timebin
