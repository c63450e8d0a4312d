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

// operator.hpp: dense complex operators and state vectors on tensor-product spaces

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace timebin {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Dims = std::vector<std::size_t>;

/// Product of all factor dimensions.
std::size_t total_dim(std::span<const std::size_t> dims);

// Basis convention shared by every module: the system factor comes first,
// the leftmost factor is the most significant digit of a composite index,
// and index 0 of each factor is the ground/vacuum state.

/// Square complex matrix tagged with the tensor factors it acts on.
class Operator {
public:
    Operator() = default;
    /// Single-factor operator; dims = {rows}.
    explicit Operator(Matrix data);
    Operator(Matrix data, Dims dims);

    static Operator identity(Dims dims);
    static Operator zero(Dims dims);

    const Matrix& data() const noexcept { return data_; }
    const Dims& dims() const noexcept { return dims_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(data_.rows()); }

    Complex operator()(std::size_t row, std::size_t col) const {
        return data_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    }

    Complex trace() const { return data_.trace(); }
    /// Largest entry magnitude.
    double max_norm() const;

    Operator& operator+=(const Operator& rhs);
    Operator& operator-=(const Operator& rhs);
    Operator& operator*=(Complex s);

    friend Operator operator+(Operator a, const Operator& b) { return a += b; }
    friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
    friend Operator operator*(Operator a, Complex s) { return a *= s; }
    friend Operator operator*(Complex s, Operator a) { return a *= s; }
    friend Operator operator*(const Operator& a, const Operator& b);

private:
    Matrix data_;
    Dims dims_;
};

/// Pure state amplitudes on a tensor-product space.
class StateVector {
public:
    StateVector() = default;
    explicit StateVector(Vector data);
    StateVector(Vector data, Dims dims);

    /// Computational basis state |index> on the given factors.
    static StateVector basis(Dims dims, std::size_t index);

    const Vector& data() const noexcept { return data_; }
    Vector& data() noexcept { return data_; }
    const Dims& dims() const noexcept { return dims_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(data_.size()); }

    double norm() const { return data_.norm(); }
    /// |psi><psi| with the same factor structure.
    Operator projector() const;

private:
    Vector data_;
    Dims dims_;
};

Operator kron(const Operator& a, const Operator& b);
StateVector kron(const StateVector& a, const StateVector& b);

Operator dagger(const Operator& a);

/// a b - b a. Throws std::invalid_argument on dimension mismatch.
Operator commutator(const Operator& a, const Operator& b);

/// Largest entry magnitude of a - b.
double max_abs_diff(const Operator& a, const Operator& b);

/// Matrix exponential by scaling and squaring around a Taylor core.
///
/// The input is scaled by 2^-s with s chosen so the 1-norm is at most 0.5,
/// the Taylor series is summed until the next term falls below machine
/// precision relative to the partial sum, and the result is squared s times.
/// Throws std::domain_error for non-finite input.
Operator expm(const Operator& a);

/// Reduced operator on the factors listed in `keep` (ascending order of
/// original position is used regardless of the order given).
/// Throws std::out_of_range for an invalid factor index.
Operator partial_trace(const Operator& a, std::span<const std::size_t> keep);

/// Reduced density matrix of |psi><psi| on the kept factors, computed without
/// forming the full projector.
Operator partial_trace(const StateVector& psi, std::span<const std::size_t> keep);

/// Von Neumann entropy in nats.
///
/// Eigenvalues within -1e-12 of zero are clamped; only eigenvalues above
/// 1e-14 contribute. Throws std::invalid_argument when max|rho - rho^dag|
/// exceeds 1e-8.
double vn_entropy(const Operator& rho);

/// Ascending eigenvalues of a Hermitian operator.
Eigen::VectorXd hermitian_eigenvalues(const Operator& a);

/// max|a - a^dag|.
double hermiticity_defect(const Operator& a);

}  // namespace timebin
