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

#include "timebin/kraus.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace timebin {

void SystemModel::validate() const {
    if (dim == 0) {
        throw std::invalid_argument("system dimension must be >= 1");
    }
    if (lowering.dim() != dim || hamiltonian.dim() != dim) {
        throw std::invalid_argument("system operators must be " + std::to_string(dim) + "x" + std::to_string(dim));
    }
    if (hermiticity_defect(hamiltonian) > 1e-12) {
        throw std::invalid_argument("system Hamiltonian is not Hermitian");
    }
}

void CoarseParams::validate() const {
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
        throw std::invalid_argument("gamma must be finite and >= 0");
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw std::invalid_argument("dt must be positive");
    }
    if (n_max < 1) {
        throw std::invalid_argument("n_max must be >= 1");
    }
}

SystemModel two_level_system(double omega0, double drive) {
    Matrix sigma = Matrix::Zero(2, 2);
    sigma(0, 1) = 1.0;
    const Matrix h = omega0 * (sigma.adjoint() * sigma) + drive * (sigma + sigma.adjoint());
    return SystemModel{2, Operator(sigma), Operator(h), "tls"};
}

SystemModel truncated_oscillator(std::size_t dim, double omega0, double drive) {
    if (dim < 2) {
        throw std::invalid_argument("oscillator truncation must keep at least 2 levels");
    }
    const auto n = static_cast<Eigen::Index>(dim);
    Matrix a = Matrix::Zero(n, n);
    for (Eigen::Index m = 1; m < n; ++m) {
        a(m - 1, m) = std::sqrt(static_cast<double>(m));
    }
    const Matrix h = omega0 * (a.adjoint() * a) + drive * (a + a.adjoint());
    return SystemModel{dim, Operator(a), Operator(h), "oscillator" + std::to_string(dim)};
}

SystemModel dephasing_variant(const SystemModel& base) {
    base.validate();
    SystemModel out = base;
    out.lowering = dagger(base.lowering) * base.lowering;
    out.label = base.label + "-dephasing";
    return out;
}

BinSpace make_bin_space(std::size_t n_max) {
    if (n_max < 1) {
        throw std::invalid_argument("n_max must be >= 1");
    }
    const auto n = static_cast<Eigen::Index>(n_max + 1);
    Matrix b = Matrix::Zero(n, n);
    for (Eigen::Index m = 1; m < n; ++m) {
        b(m - 1, m) = std::sqrt(static_cast<double>(m));
    }
    return BinSpace{n_max, Operator(b)};
}

Operator bin_generator(const SystemModel& sys, const CoarseParams& p) {
    sys.validate();
    p.validate();
    const BinSpace bin = make_bin_space(p.n_max);
    const Operator one_bin = Operator::identity({bin.dim()});
    const Complex minus_i_dt{0.0, -p.dt};
    const double coupling = std::sqrt(p.gamma * p.dt);

    Operator g = minus_i_dt * kron(sys.hamiltonian, one_bin);
    g += Complex{coupling, 0.0} *
         (kron(sys.lowering, dagger(bin.annihilate)) - kron(dagger(sys.lowering), bin.annihilate));
    return g;
}

Operator coarse_map(const SystemModel& sys, const CoarseParams& p) {
    return expm(bin_generator(sys, p));
}

Operator excitation_number(const SystemModel& sys, const BinSpace& bin) {
    const Operator n_sys = dagger(sys.lowering) * sys.lowering;
    const Operator n_bin = dagger(bin.annihilate) * bin.annihilate;
    return kron(n_sys, Operator::identity({bin.dim()})) + kron(Operator::identity({sys.dim}), n_bin);
}

double ordering_residual(const SystemModel& sys, const CoarseParams& p, int subdivisions) {
    if (subdivisions < 2) {
        throw std::invalid_argument("ordering_residual: subdivisions must be >= 2");
    }
    const DensityMatrix rho0 = DensityMatrix::basis(sys.dim, sys.dim - 1);

    const KrausFamily coarse = kraus_family(sys, p);
    const DensityMatrix single = apply_channel(coarse, rho0);

    CoarseParams fine_params = p;
    fine_params.dt = p.dt / subdivisions;
    const KrausFamily fine = kraus_family(sys, fine_params);
    DensityMatrix composed = rho0;
    for (int s = 0; s < subdivisions; ++s) {
        composed = apply_channel(fine, composed);
    }
    return max_abs_diff(single.op(), composed.op());
}

}  // namespace timebin
