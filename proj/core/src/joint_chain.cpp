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

#include "timebin/joint_chain.hpp"

#include "timebin/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace timebin {

namespace {

std::size_t ipow(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        r *= base;
    }
    return r;
}

}  // namespace

ChainState init_chain(const StateVector& sys_state, std::size_t n_bins, std::size_t n_max) {
    if (n_bins == 0) {
        throw std::invalid_argument("init_chain: need at least one bin");
    }
    if (n_max < 1) {
        throw std::invalid_argument("init_chain: n_max must be >= 1");
    }
    if (std::abs(sys_state.norm() - 1.0) > 1e-10) {
        throw std::invalid_argument("init_chain: system state is not normalized");
    }
    const std::size_t sys_dim = sys_state.dim();
    const std::size_t bin_dim = n_max + 1;

    // overflow-safe check of sys_dim * bin_dim^n_bins <= limit
    std::size_t amplitudes = sys_dim;
    for (std::size_t b = 0; b < n_bins; ++b) {
        if (amplitudes > kMaxChainAmplitudes / bin_dim) {
            std::ostringstream msg;
            msg << "init_chain: " << sys_dim << " x " << bin_dim << "^" << n_bins << " amplitudes exceeds the limit of "
                << kMaxChainAmplitudes;
            throw NumericGuardError(msg.str());
        }
        amplitudes *= bin_dim;
    }

    const std::size_t field_dim = amplitudes / sys_dim;
    Vector v = Vector::Zero(static_cast<Eigen::Index>(amplitudes));
    for (std::size_t s = 0; s < sys_dim; ++s) {
        // vacuum is field index 0
        v(static_cast<Eigen::Index>(s * field_dim)) = sys_state.data()(static_cast<Eigen::Index>(s));
    }
    Dims dims{sys_dim};
    dims.insert(dims.end(), n_bins, bin_dim);

    ChainState state;
    state.vec = StateVector(std::move(v), std::move(dims));
    state.n_bins = n_bins;
    state.sys_dim = sys_dim;
    state.bin_dim = bin_dim;
    state.initial_system = DensityMatrix::pure(StateVector(sys_state.data()));
    return state;
}

void advance_chain(ChainState& state, const Operator& U) {
    if (state.cursor >= state.n_bins) {
        throw std::out_of_range("step_chain: every bin has already interacted");
    }
    const Dims expected{state.sys_dim, state.bin_dim};
    if (U.dims() != expected) {
        throw std::invalid_argument("step_chain: map dims do not match [sys_dim, bin_dim]");
    }

    // index = s * field + pre * (d * post) + b * post + q
    const std::size_t d = state.bin_dim;
    const std::size_t pre = ipow(d, state.cursor);
    const std::size_t post = ipow(d, state.n_bins - state.cursor - 1);
    const std::size_t field = pre * d * post;
    const auto pair_dim = static_cast<Eigen::Index>(state.sys_dim * d);
    const auto spectators = static_cast<Eigen::Index>(pre * post);

    Vector& v = state.vec.data();
    Matrix block(pair_dim, spectators);
    const auto index = [&](std::size_t s, std::size_t b, std::size_t p, std::size_t q) {
        return static_cast<Eigen::Index>(s * field + p * d * post + b * post + q);
    };
    for (std::size_t s = 0; s < state.sys_dim; ++s) {
        for (std::size_t b = 0; b < d; ++b) {
            for (std::size_t p = 0; p < pre; ++p) {
                for (std::size_t q = 0; q < post; ++q) {
                    block(static_cast<Eigen::Index>(s * d + b), static_cast<Eigen::Index>(p * post + q)) =
                        v(index(s, b, p, q));
                }
            }
        }
    }
    const Matrix moved = U.data() * block;
    for (std::size_t s = 0; s < state.sys_dim; ++s) {
        for (std::size_t b = 0; b < d; ++b) {
            for (std::size_t p = 0; p < pre; ++p) {
                for (std::size_t q = 0; q < post; ++q) {
                    v(index(s, b, p, q)) =
                        moved(static_cast<Eigen::Index>(s * d + b), static_cast<Eigen::Index>(p * post + q));
                }
            }
        }
    }
    ++state.cursor;
}

ChainState step_chain(ChainState state, const Operator& U) {
    advance_chain(state, U);
    return state;
}

DensityMatrix reduced_system(const ChainState& state) {
    const auto sys = static_cast<Eigen::Index>(state.sys_dim);
    const auto field = static_cast<Eigen::Index>(state.vec.dim() / state.sys_dim);
    // system index is the most significant digit, so the amplitudes form a
    // row-major sys x field matrix
    const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> psi(
        state.vec.data().data(), sys, field);
    return DensityMatrix(Operator(psi * psi.adjoint()));
}

FactorizationReport factorization_report(const ChainState& state, const DensityMatrix& kraus_reference) {
    const DensityMatrix rho = reduced_system(state);
    return FactorizationReport{vn_entropy(rho.op()), max_abs_diff(rho.op(), kraus_reference.op())};
}

FactorizationReport factorization_report(const ChainState& state, const KrausFamily& family) {
    DensityMatrix reference = state.initial_system;
    for (std::size_t k = 0; k < state.cursor; ++k) {
        reference = apply_channel(family, reference);
    }
    return factorization_report(state, reference);
}

double untouched_bin_leakage(const ChainState& state) {
    const std::size_t d = state.bin_dim;
    // bins >= cursor are the least significant digits: an excitation there
    // means the index modulo d^(N - cursor) is nonzero
    const std::size_t tail = ipow(d, state.n_bins - state.cursor);
    double worst = 0.0;
    const Vector& v = state.vec.data();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (static_cast<std::size_t>(i) % tail != 0) {
            worst = std::max(worst, std::abs(v(i)));
        }
    }
    return worst;
}

}  // namespace timebin
