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

// kraus.hpp: Kraus extraction from the bin map and operator-sum iteration

#pragma once

#include "timebin/model.hpp"
#include "timebin/operator.hpp"

#include <cstddef>
#include <vector>

namespace timebin {

/// Density matrix on the system space.
///
/// Construction only checks that the operator is square; use checked() when
/// the physical constraints must hold on entry.
class DensityMatrix {
public:
    DensityMatrix() = default;
    explicit DensityMatrix(Operator op);

    /// Validates Hermiticity, unit trace, and positivity to `tol`.
    /// Throws std::invalid_argument on violation.
    static DensityMatrix checked(Operator op, double tol = 1e-10);
    static DensityMatrix pure(const StateVector& psi);
    /// |k><k| on a `dim`-level system.
    static DensityMatrix basis(std::size_t dim, std::size_t k);

    const Operator& op() const noexcept { return op_; }
    std::size_t dim() const noexcept { return op_.dim(); }
    Complex operator()(std::size_t r, std::size_t c) const { return op_(r, c); }

    double trace() const { return op_.trace().real(); }
    double purity() const;
    double min_eigenvalue() const;

private:
    Operator op_;
};

/// K_m = (1 x <m|) U (1 x |0>) for m = 0..n_max.
struct KrausFamily {
    std::vector<Operator> ops;
    double dt = 0.0;
    std::size_t n_max = 0;
    double completeness_defect = 0.0;  // max|sum_m K_m^dag K_m - 1|

    std::size_t sys_dim() const { return ops.empty() ? 0 : ops.front().dim(); }
};

KrausFamily extract_kraus(const Operator& U, std::size_t sys_dim, std::size_t n_max, double dt);

/// Convenience: extract_kraus(coarse_map(sys, p), ...).
KrausFamily kraus_family(const SystemModel& sys, const CoarseParams& p);

/// Deviations of the extracted family from its leading-order expansion.
struct ExpansionResiduals {
    double dt = 0.0;
    double r0 = 0.0;  // max|K0 - (1 + dt(-iH - gamma/2 L^dag L))|
    double r1 = 0.0;  // max|K1 - sqrt(gamma dt) L|
    double r2 = 0.0;  // max|K2|, or 0 when n_max < 2
    double completeness_defect = 0.0;
};

ExpansionResiduals expansion_report(const KrausFamily& f, const SystemModel& sys, double gamma);

/// sum_m K_m rho K_m^dag, symmetrized to (rho + rho^dag)/2. The trace is left
/// as produced; a deviation above 1e-6 throws NumericGuardError because it
/// means the bin truncation is too small.
DensityMatrix apply_channel(const KrausFamily& f, const DensityMatrix& rho);

/// rho_0, rho_1, ..., rho_steps under the same family at every step.
std::vector<DensityMatrix> iterate_channel(const KrausFamily& f, const DensityMatrix& rho0, std::size_t steps);

}  // namespace timebin
