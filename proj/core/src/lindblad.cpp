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

#include "timebin/lindblad.hpp"

#include "timebin/errors.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace timebin {

namespace {

Matrix dissipator_matrix(const Matrix& l, double gamma, const Matrix& rho) {
    const Matrix ldl = l.adjoint() * l;
    return gamma * (l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl));
}

Matrix liouvillian_matrix(const Matrix& h, const Matrix& l, double gamma, const Matrix& rho) {
    const Complex minus_i{0.0, -1.0};
    return minus_i * (h * rho - rho * h) + dissipator_matrix(l, gamma, rho);
}

void require_dims(const LindbladModel& model, const DensityMatrix& rho) {
    if (model.hamiltonian.dim() != rho.dim() || model.collapse.dim() != rho.dim()) {
        throw std::invalid_argument("Lindblad model and density matrix differ in dimension");
    }
}

}  // namespace

void LindbladModel::validate() const {
    if (hamiltonian.dim() != collapse.dim()) {
        throw std::invalid_argument("Hamiltonian and collapse operator differ in dimension");
    }
    if (hermiticity_defect(hamiltonian) > 1e-12) {
        throw std::invalid_argument("Hamiltonian is not Hermitian");
    }
    if (!(gamma >= 0.0)) {
        throw std::invalid_argument("gamma must be >= 0");
    }
}

LindbladModel lindblad_model(const SystemModel& sys, double gamma) {
    LindbladModel m{sys.hamiltonian, sys.lowering, gamma};
    m.validate();
    return m;
}

Operator dissipator(const LindbladModel& model, const DensityMatrix& rho) {
    require_dims(model, rho);
    return Operator(dissipator_matrix(model.collapse.data(), model.gamma, rho.op().data()), rho.op().dims());
}

Operator liouvillian(const LindbladModel& model, const DensityMatrix& rho) {
    require_dims(model, rho);
    return Operator(liouvillian_matrix(model.hamiltonian.data(), model.collapse.data(), model.gamma, rho.op().data()),
                    rho.op().dims());
}

std::vector<DensityMatrix> integrate_rk4(const LindbladModel& model, const DensityMatrix& rho0, double dt,
                                         std::size_t steps) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("integrate_rk4: dt must be positive");
    }
    model.validate();
    require_dims(model, rho0);

    const Matrix& h = model.hamiltonian.data();
    const Matrix& l = model.collapse.data();
    const auto rhs = [&](const Matrix& r) { return liouvillian_matrix(h, l, model.gamma, r); };
    const Complex trace0 = rho0.op().trace();

    std::vector<DensityMatrix> series;
    series.reserve(steps + 1);
    series.push_back(rho0);
    Matrix r = rho0.op().data();
    for (std::size_t n = 0; n < steps; ++n) {
        const Matrix k1 = rhs(r);
        const Matrix k2 = rhs(r + 0.5 * dt * k1);
        const Matrix k3 = rhs(r + 0.5 * dt * k2);
        const Matrix k4 = rhs(r + dt * k3);
        r += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        const double drift = std::abs(r.trace() - trace0);
        if (!(drift <= 1e-8)) {
            std::ostringstream msg;
            msg << "integrate_rk4: trace drifted by " << drift << " at step " << n + 1;
            throw NumericGuardError(msg.str());
        }
        series.emplace_back(Operator(r, rho0.op().dims()));
    }
    return series;
}

DensityMatrix analytic_oracle(DecayKind kind, double gamma, double t, const DensityMatrix& rho0) {
    if (rho0.dim() != 2) {
        throw std::invalid_argument("analytic_oracle: two-level input required");
    }
    const Complex rho_ee0 = rho0(1, 1);
    const Complex rho_eg0 = rho0(1, 0);
    const double coherence_decay = std::exp(-0.5 * gamma * t);

    Matrix out(2, 2);
    if (kind == DecayKind::spontaneous) {
        const Complex rho_ee = rho_ee0 * std::exp(-gamma * t);
        out(1, 1) = rho_ee;
        out(0, 0) = rho0(0, 0) + rho_ee0 - rho_ee;
    } else {
        out(1, 1) = rho_ee0;
        out(0, 0) = rho0(0, 0);
    }
    out(1, 0) = rho_eg0 * coherence_decay;
    out(0, 1) = std::conj(out(1, 0));
    return DensityMatrix(Operator(std::move(out)));
}

}  // namespace timebin
