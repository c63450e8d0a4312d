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

// property_checks.hpp: randomized invariant sweeps shared by the property
// test and the acceptance binary

#pragma once

#include "test_support.hpp"
#include "timebin/kraus.hpp"
#include "timebin/model.hpp"
#include "timebin/operator.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

namespace timebin::testing {

struct PropertyTally {
    std::string name;
    std::size_t instances = 0;
    std::size_t failures = 0;
    double worst = 0.0;  // largest defect seen
    double tolerance = 0.0;

    void record(double defect) {
        ++instances;
        worst = std::max(worst, defect);
        if (!(defect <= tolerance)) {
            ++failures;
        }
    }
    bool ok() const { return instances > 0 && failures == 0; }
};

inline SystemModel random_system(Generator& gen) {
    switch (gen.index(0, 2)) {
    case 0:
        return two_level_system(gen.uniform(-3, 3), gen.uniform(-3, 3));
    case 1:
        return truncated_oscillator(3, gen.uniform(-3, 3), gen.uniform(-3, 3));
    default:
        return dephasing_variant(two_level_system(gen.uniform(-3, 3), gen.uniform(-3, 3)));
    }
}

// n_max = 4 keeps the truncation loss of the oscillator well inside the
// channel's trace guard for gamma dt <= 0.1
inline CoarseParams random_params(Generator& gen) {
    const double gamma = gen.uniform(0.1, 2.0);
    return CoarseParams{gamma, gen.uniform(1e-3, 0.1) / gamma, 4};
}

/// Trace, Hermiticity and positivity of one channel application.
inline void channel_properties(std::size_t n, std::uint64_t seed, PropertyTally& trace, PropertyTally& hermitian,
                               PropertyTally& positive) {
    Generator gen(seed);
    for (std::size_t i = 0; i < n; ++i) {
        const SystemModel sys = random_system(gen);
        const KrausFamily f = kraus_family(sys, random_params(gen));
        const DensityMatrix out = apply_channel(f, DensityMatrix(gen.density({sys.dim})));
        // a qubit family is exactly complete; a truncated oscillator loses
        // population only through the bin cutoff
        trace.record(std::abs(out.trace() - 1.0) - f.completeness_defect);
        hermitian.record(hermiticity_defect(out.op()));
        positive.record(std::max(0.0, -out.min_eigenvalue()));
    }
}

inline void expm_unitarity(std::size_t n, std::uint64_t seed, PropertyTally& tally) {
    Generator gen(seed);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t d = gen.index(2, 12);
        Matrix h = gen.hermitian(d);
        h *= gen.uniform(0.1, 10.0) / h.operatorNorm();
        const Operator u = expm(Operator(Complex{0.0, -1.0} * h));
        tally.record(max_abs_diff(dagger(u) * u, Operator::identity({d})));
    }
}

inline void partial_trace_preservation(std::size_t n, std::uint64_t seed, PropertyTally& tally) {
    Generator gen(seed);
    for (std::size_t i = 0; i < n; ++i) {
        const Dims dims{gen.index(2, 3), gen.index(2, 3), gen.index(1, 3)};
        const Operator rho = gen.density(dims);
        const std::size_t keep[] = {gen.index(0, 2)};
        tally.record(std::abs(partial_trace(rho, keep).trace() - rho.trace()) / static_cast<double>(rho.dim()));
    }
}

}  // namespace timebin::testing
