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

#include "timebin/operator.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

namespace timebin {

std::size_t total_dim(std::span<const std::size_t> dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>{});
}

namespace {

void check_dims(const Dims& dims, std::size_t side) {
    if (dims.empty()) {
        throw std::invalid_argument("factor dimension list is empty");
    }
    for (auto d : dims) {
        if (d == 0) {
            throw std::invalid_argument("factor dimensions must be >= 1");
        }
    }
    if (total_dim(dims) != side) {
        throw std::invalid_argument("product of factor dimensions (" + std::to_string(total_dim(dims)) +
                                    ") does not match side length " + std::to_string(side));
    }
}

void require_same_shape(const Operator& a, const Operator& b, const char* what) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim()) +
                                    " vs " + std::to_string(b.dim()) + ")");
    }
}

// Splits every composite index into (kept index, traced index).
struct FactorSplit {
    std::size_t kept_dim = 1;
    std::size_t traced_dim = 1;
    Dims kept_dims;
    // table[k * traced_dim + t] = composite index
    std::vector<std::size_t> table;
};

FactorSplit split_factors(const Dims& dims, std::span<const std::size_t> keep) {
    std::vector<bool> kept(dims.size(), false);
    for (auto k : keep) {
        if (k >= dims.size()) {
            throw std::out_of_range("partial_trace: factor index " + std::to_string(k) + " out of range for " +
                                    std::to_string(dims.size()) + " factors");
        }
        kept[k] = true;
    }

    FactorSplit split;
    for (std::size_t f = 0; f < dims.size(); ++f) {
        if (kept[f]) {
            split.kept_dims.push_back(dims[f]);
            split.kept_dim *= dims[f];
        } else {
            split.traced_dim *= dims[f];
        }
    }
    if (split.kept_dims.empty()) {
        split.kept_dims.push_back(1);
    }

    const std::size_t n = total_dim(dims);
    split.table.assign(n, 0);
    std::vector<std::size_t> digit(dims.size(), 0);
    for (std::size_t idx = 0; idx < n; ++idx) {
        std::size_t k = 0;
        std::size_t t = 0;
        for (std::size_t f = 0; f < dims.size(); ++f) {
            if (kept[f]) {
                k = k * dims[f] + digit[f];
            } else {
                t = t * dims[f] + digit[f];
            }
        }
        split.table[k * split.traced_dim + t] = idx;
        // increment the mixed-radix counter, rightmost factor fastest
        for (std::size_t f = dims.size(); f-- > 0;) {
            if (++digit[f] < dims[f]) {
                break;
            }
            digit[f] = 0;
        }
    }
    return split;
}

}  // namespace

Operator::Operator(Matrix data) : data_(std::move(data)) {
    if (data_.rows() != data_.cols()) {
        throw std::invalid_argument("operator matrix must be square");
    }
    dims_ = {static_cast<std::size_t>(data_.rows())};
    check_dims(dims_, dim());
}

Operator::Operator(Matrix data, Dims dims) : data_(std::move(data)), dims_(std::move(dims)) {
    if (data_.rows() != data_.cols()) {
        throw std::invalid_argument("operator matrix must be square");
    }
    check_dims(dims_, dim());
}

Operator Operator::identity(Dims dims) {
    const auto n = static_cast<Eigen::Index>(total_dim(dims));
    return Operator(Matrix::Identity(n, n), std::move(dims));
}

Operator Operator::zero(Dims dims) {
    const auto n = static_cast<Eigen::Index>(total_dim(dims));
    return Operator(Matrix::Zero(n, n), std::move(dims));
}

double Operator::max_norm() const {
    return data_.size() == 0 ? 0.0 : data_.cwiseAbs().maxCoeff();
}

Operator& Operator::operator+=(const Operator& rhs) {
    require_same_shape(*this, rhs, "operator+");
    data_ += rhs.data_;
    return *this;
}

Operator& Operator::operator-=(const Operator& rhs) {
    require_same_shape(*this, rhs, "operator-");
    data_ -= rhs.data_;
    return *this;
}

Operator& Operator::operator*=(Complex s) {
    data_ *= s;
    return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
    require_same_shape(a, b, "operator*");
    return Operator(a.data() * b.data(), a.dims());
}

StateVector::StateVector(Vector data) : data_(std::move(data)) {
    dims_ = {static_cast<std::size_t>(data_.size())};
    check_dims(dims_, dim());
}

StateVector::StateVector(Vector data, Dims dims) : data_(std::move(data)), dims_(std::move(dims)) {
    check_dims(dims_, dim());
}

StateVector StateVector::basis(Dims dims, std::size_t index) {
    const auto n = total_dim(dims);
    if (index >= n) {
        throw std::out_of_range("basis index " + std::to_string(index) + " out of range");
    }
    Vector v = Vector::Zero(static_cast<Eigen::Index>(n));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(std::move(v), std::move(dims));
}

Operator StateVector::projector() const {
    return Operator(data_ * data_.adjoint(), dims_);
}

Operator kron(const Operator& a, const Operator& b) {
    const auto na = a.data().rows();
    const auto nb = b.data().rows();
    Matrix out(na * nb, na * nb);
    for (Eigen::Index i = 0; i < na; ++i) {
        for (Eigen::Index j = 0; j < na; ++j) {
            out.block(i * nb, j * nb, nb, nb) = a.data()(i, j) * b.data();
        }
    }
    Dims dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    return Operator(std::move(out), std::move(dims));
}

StateVector kron(const StateVector& a, const StateVector& b) {
    const auto na = a.data().size();
    const auto nb = b.data().size();
    Vector out(na * nb);
    for (Eigen::Index i = 0; i < na; ++i) {
        out.segment(i * nb, nb) = a.data()(i) * b.data();
    }
    Dims dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    return StateVector(std::move(out), std::move(dims));
}

Operator dagger(const Operator& a) {
    return Operator(a.data().adjoint(), a.dims());
}

Operator commutator(const Operator& a, const Operator& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("commutator: dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                                    std::to_string(b.dim()) + ")");
    }
    return Operator(a.data() * b.data() - b.data() * a.data(), a.dims());
}

double max_abs_diff(const Operator& a, const Operator& b) {
    require_same_shape(a, b, "max_abs_diff");
    return (a.data() - b.data()).cwiseAbs().maxCoeff();
}

Operator expm(const Operator& a) {
    const Matrix& m = a.data();
    if (!m.allFinite()) {
        throw std::domain_error("expm: non-finite input");
    }
    const auto n = m.rows();
    const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();

    int squarings = 0;
    if (norm1 > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
    }
    const Matrix scaled = m * std::ldexp(1.0, -squarings);

    Matrix result = Matrix::Identity(n, n);
    Matrix term = Matrix::Identity(n, n);
    constexpr int kMaxTerms = 40;
    for (int k = 1; k <= kMaxTerms; ++k) {
        term = (term * scaled) / static_cast<double>(k);
        result += term;
        const double term_norm = term.cwiseAbs().maxCoeff();
        if (term_norm <= 1e-18 * std::max(1.0, result.cwiseAbs().maxCoeff())) {
            break;
        }
    }
    for (int s = 0; s < squarings; ++s) {
        result = result * result;
    }
    return Operator(std::move(result), a.dims());
}

Operator partial_trace(const Operator& a, std::span<const std::size_t> keep) {
    const FactorSplit split = split_factors(a.dims(), keep);
    const auto kd = static_cast<Eigen::Index>(split.kept_dim);
    Matrix out = Matrix::Zero(kd, kd);
    for (std::size_t k1 = 0; k1 < split.kept_dim; ++k1) {
        for (std::size_t k2 = 0; k2 < split.kept_dim; ++k2) {
            Complex acc{0.0, 0.0};
            for (std::size_t t = 0; t < split.traced_dim; ++t) {
                acc += a(split.table[k1 * split.traced_dim + t], split.table[k2 * split.traced_dim + t]);
            }
            out(static_cast<Eigen::Index>(k1), static_cast<Eigen::Index>(k2)) = acc;
        }
    }
    return Operator(std::move(out), split.kept_dims);
}

Operator partial_trace(const StateVector& psi, std::span<const std::size_t> keep) {
    const FactorSplit split = split_factors(psi.dims(), keep);
    const auto kd = static_cast<Eigen::Index>(split.kept_dim);
    const auto td = static_cast<Eigen::Index>(split.traced_dim);
    Matrix amplitudes(kd, td);
    for (Eigen::Index k = 0; k < kd; ++k) {
        for (Eigen::Index t = 0; t < td; ++t) {
            amplitudes(k, t) = psi.data()(static_cast<Eigen::Index>(split.table[k * td + t]));
        }
    }
    return Operator(amplitudes * amplitudes.adjoint(), split.kept_dims);
}

double hermiticity_defect(const Operator& a) {
    return (a.data() - a.data().adjoint()).cwiseAbs().maxCoeff();
}

Eigen::VectorXd hermitian_eigenvalues(const Operator& a) {
    const Matrix sym = 0.5 * (a.data() + a.data().adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_eigenvalues: eigen-solver did not converge");
    }
    return solver.eigenvalues();
}

double vn_entropy(const Operator& rho) {
    if (hermiticity_defect(rho) > 1e-8) {
        throw std::invalid_argument("vn_entropy: input is not Hermitian");
    }
    const Eigen::VectorXd evals = hermitian_eigenvalues(rho);
    double s = 0.0;
    for (Eigen::Index i = 0; i < evals.size(); ++i) {
        double lambda = evals(i);
        if (lambda < 0.0 && lambda >= -1e-12) {
            lambda = 0.0;
        }
        if (lambda > 1e-14) {
            s -= lambda * std::log(lambda);
        }
    }
    return s;
}

}  // namespace timebin
