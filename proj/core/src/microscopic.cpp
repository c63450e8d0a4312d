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

#include "timebin/microscopic.hpp"

#include "timebin/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace timebin {

void FrequencyGrid::validate() const {
    if (n_modes < 3 || n_modes % 2 == 0) {
        throw std::invalid_argument("frequency grid needs an odd number of modes >= 3");
    }
    if (!(half_width > 0.0)) {
        throw std::invalid_argument("frequency grid half width must be positive");
    }
}

double FrequencyGrid::recurrence_time() const {
    return 2.0 * std::numbers::pi / spacing();
}

double mode_coupling(const FrequencyGrid& grid, double gamma) {
    return std::sqrt(gamma * grid.spacing() / (2.0 * std::numbers::pi));
}

Operator build_microscopic(const FrequencyGrid& grid, double gamma) {
    grid.validate();
    if (!(gamma >= 0.0)) {
        throw std::invalid_argument("gamma must be >= 0");
    }
    const auto n = static_cast<Eigen::Index>(grid.n_modes + 1);
    const double g = mode_coupling(grid, gamma);
    Matrix h = Matrix::Zero(n, n);
    for (std::size_t j = 0; j < grid.n_modes; ++j) {
        const auto row = static_cast<Eigen::Index>(j + 1);
        h(row, row) = grid.frequency(j);
        h(row, 0) = Complex{0.0, g};
        h(0, row) = Complex{0.0, -g};
    }
    return Operator(std::move(h));
}

SurvivalSeries evolve_microscopic(const Operator& hamiltonian, const FrequencyGrid& grid, double t_final,
                                  std::size_t steps) {
    if (t_final >= grid.recurrence_time()) {
        std::ostringstream msg;
        msg << "evolve_microscopic: t_final = " << t_final << " is past the grid recurrence time "
            << grid.recurrence_time();
        throw NumericGuardError(msg.str());
    }
    if (steps == 0) {
        throw std::invalid_argument("evolve_microscopic: steps must be >= 1");
    }
    const Matrix& h = hamiltonian.data();
    // Rephase each basis state by the phase of its coupling to |e, vac>. The
    // emitter amplitude and the norm are unchanged, and for flat coupling the
    // matrix becomes real symmetric.
    Vector gauge = Vector::Ones(h.rows());
    for (Eigen::Index j = 1; j < h.rows(); ++j) {
        if (std::abs(h(j, 0)) > 0.0) {
            gauge(j) = h(j, 0) / std::abs(h(j, 0));
        }
    }
    const Matrix rephased = gauge.conjugate().asDiagonal() * h * gauge.asDiagonal();
    const bool real_path =
        rephased.imag().cwiseAbs().maxCoeff() <= 1e-14 * std::max(1.0, rephased.cwiseAbs().maxCoeff());

    Eigen::VectorXd energies;
    Eigen::MatrixXd real_modes;
    Matrix complex_modes;
    if (real_path) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(rephased.real());
        if (solver.info() != Eigen::Success) {
            throw NumericGuardError("evolve_microscopic: eigen-solver did not converge");
        }
        energies = solver.eigenvalues();
        real_modes = solver.eigenvectors();
    } else {
        Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
        if (solver.info() != Eigen::Success) {
            throw NumericGuardError("evolve_microscopic: eigen-solver did not converge");
        }
        energies = solver.eigenvalues();
        complex_modes = solver.eigenvectors();
    }
    // overlap of each eigenvector with |e, vac>
    const Vector weights = real_path ? Vector(real_modes.row(0).transpose().cast<Complex>())
                                     : Vector(complex_modes.row(0).adjoint());

    SurvivalSeries out;
    out.times.reserve(steps + 1);
    out.survival.reserve(steps + 1);
    Vector phased(weights.size());
    for (std::size_t k = 0; k <= steps; ++k) {
        const double t = t_final * static_cast<double>(k) / static_cast<double>(steps);
        for (Eigen::Index i = 0; i < weights.size(); ++i) {
            phased(i) = std::polar(1.0, -energies(i) * t) * weights(i);
        }
        Complex c_e;
        double norm = 0.0;
        if (real_path) {
            const Eigen::VectorXd re = real_modes * phased.real();
            const Eigen::VectorXd im = real_modes * phased.imag();
            c_e = Complex{re(0), im(0)};
            norm = std::sqrt(re.squaredNorm() + im.squaredNorm());
        } else {
            const Vector psi = complex_modes * phased;
            c_e = psi(0);
            norm = psi.norm();
        }
        out.times.push_back(t);
        out.survival.push_back(std::norm(c_e));
        out.max_norm_error = std::max(out.max_norm_error, std::abs(norm - 1.0));
    }
    return out;
}

double fitted_decay_slope(const SurvivalSeries& series, double t_lo, double t_hi) {
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    std::size_t n = 0;
    for (std::size_t k = 0; k < series.times.size(); ++k) {
        const double t = series.times[k];
        if (t < t_lo || t > t_hi) {
            continue;
        }
        const double y = std::log(series.survival[k]);
        sx += t;
        sy += y;
        sxx += t * t;
        sxy += t * y;
        ++n;
    }
    if (n < 2) {
        throw std::invalid_argument("fitted_decay_slope: fewer than two samples in the fit window");
    }
    const double nn = static_cast<double>(n);
    return (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
}

}  // namespace timebin
