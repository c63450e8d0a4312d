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

// lindblad.hpp: continuum-limit reference: dissipator, Liouvillian, RK4, closed forms

#pragma once

#include "timebin/kraus.hpp"
#include "timebin/model.hpp"
#include "timebin/operator.hpp"

#include <cstddef>
#include <vector>

namespace timebin {

/// drho/dt = -i[H, rho] + gamma (L rho L^dag - 1/2 {L^dag L, rho}).
/// The collapse operator L is stored without the sqrt(gamma) factor.
struct LindbladModel {
    Operator hamiltonian;
    Operator collapse;
    double gamma = 1.0;

    void validate() const;
};

LindbladModel lindblad_model(const SystemModel& sys, double gamma);

Operator dissipator(const LindbladModel& model, const DensityMatrix& rho);
Operator liouvillian(const LindbladModel& model, const DensityMatrix& rho);

/// Classic fixed-step RK4. Returns rho at t = 0, dt, ..., steps*dt.
/// Throws NumericGuardError if the trace drifts by more than 1e-8.
std::vector<DensityMatrix> integrate_rk4(const LindbladModel& model, const DensityMatrix& rho0, double dt,
                                         std::size_t steps);

enum class DecayKind { spontaneous, dephasing };

/// Closed-form two-level solution with H_sys = 0. Throws std::invalid_argument
/// for anything other than a 2x2 input.
DensityMatrix analytic_oracle(DecayKind kind, double gamma, double t, const DensityMatrix& rho0);

}  // namespace timebin
