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

#include "timebin/kraus.hpp"

#include "timebin/errors.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace timebin {

DensityMatrix::DensityMatrix(Operator op) : op_(std::move(op)) {}

DensityMatrix DensityMatrix::checked(Operator op, double tol) {
    if (hermiticity_defect(op) > tol) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
    if (std::abs(op.trace() - Complex{1.0, 0.0}) > tol) {
        throw std::invalid_argument("density matrix trace is not 1");
    }
    DensityMatrix rho(std::move(op));
    if (rho.min_eigenvalue() < -tol) {
        throw std::invalid_argument("density matrix is not positive semidefinite");
    }
    return rho;
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
    return DensityMatrix(psi.projector());
}

DensityMatrix DensityMatrix::basis(std::size_t dim, std::size_t k) {
    return pure(StateVector::basis({dim}, k));
}

double DensityMatrix::purity() const {
    // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    return op_.data().cwiseAbs2().sum();
}

double DensityMatrix::min_eigenvalue() const {
    return hermitian_eigenvalues(op_).minCoeff();
}

KrausFamily extract_kraus(const Operator& U, std::size_t sys_dim, std::size_t n_max, double dt) {
    const Dims expected{sys_dim, n_max + 1};
    if (U.dims() != expected) {
        std::ostringstream msg;
        msg << "extract_kraus: map dims do not match [" << sys_dim << ", " << n_max + 1 << "]";
        throw std::invalid_argument(msg.str());
    }
    const auto d = static_cast<Eigen::Index>(sys_dim);
    const auto nb = static_cast<Eigen::Index>(n_max + 1);

    KrausFamily f;
    f.dt = dt;
    f.n_max = n_max;
    f.ops.reserve(n_max + 1);
    Matrix completeness = Matrix::Zero(d, d);
    for (Eigen::Index m = 0; m < nb; ++m) {
        Matrix k(d, d);
        for (Eigen::Index i = 0; i < d; ++i) {
            for (Eigen::Index j = 0; j < d; ++j) {
                k(i, j) = U.data()(i * nb + m, j * nb);
            }
        }
        completeness += k.adjoint() * k;
        f.ops.emplace_back(std::move(k));
    }
    f.completeness_defect = (completeness - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
    return f;
}

KrausFamily kraus_family(const SystemModel& sys, const CoarseParams& p) {
    return extract_kraus(coarse_map(sys, p), sys.dim, p.n_max, p.dt);
}

ExpansionResiduals expansion_report(const KrausFamily& f, const SystemModel& sys, double gamma) {
    if (f.sys_dim() != sys.dim) {
        throw std::invalid_argument("expansion_report: family and system dimensions differ");
    }
    const Operator& l = sys.lowering;
    const Operator one = Operator::identity({sys.dim});
    const Operator k0_expected =
        one + Complex{f.dt, 0.0} * (Complex{0.0, -1.0} * sys.hamiltonian + Complex{-0.5 * gamma, 0.0} * (dagger(l) * l));
    const Operator k1_expected = Complex{std::sqrt(gamma * f.dt), 0.0} * l;

    ExpansionResiduals r;
    r.dt = f.dt;
    r.r0 = max_abs_diff(f.ops[0], k0_expected);
    r.r1 = max_abs_diff(f.ops[1], k1_expected);
    r.r2 = f.ops.size() > 2 ? f.ops[2].max_norm() : 0.0;
    r.completeness_defect = f.completeness_defect;
    return r;
}

DensityMatrix apply_channel(const KrausFamily& f, const DensityMatrix& rho) {
    if (rho.dim() != f.sys_dim()) {
        throw std::invalid_argument("apply_channel: density matrix and Kraus operators differ in dimension");
    }
    const Matrix& r = rho.op().data();
    Matrix out = Matrix::Zero(r.rows(), r.cols());
    for (const auto& k : f.ops) {
        out.noalias() += k.data() * r * k.data().adjoint();
    }
    const double deviation = std::abs(out.trace() - r.trace());
    if (deviation > 1e-6) {
        std::ostringstream msg;
        msg << "apply_channel: trace changed by " << deviation << " (n_max = " << f.n_max
            << " is too small for this dt)";
        throw NumericGuardError(msg.str());
    }
    Matrix sym = 0.5 * (out + out.adjoint());
    return DensityMatrix(Operator(std::move(sym), rho.op().dims()));
}

std::vector<DensityMatrix> iterate_channel(const KrausFamily& f, const DensityMatrix& rho0, std::size_t steps) {
    std::vector<DensityMatrix> series;
    series.reserve(steps + 1);
    series.push_back(rho0);
    for (std::size_t k = 0; k < steps; ++k) {
        series.push_back(apply_channel(f, series.back()));
    }
    return series;
}

}  // namespace timebin
