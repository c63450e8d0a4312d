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

#include <doctest.h>

#include "property_checks.hpp"
#include "timebin/lindblad.hpp"

#include <algorithm>
#include <cmath>

using namespace timebin;
using timebin::testing::Generator;
using timebin::testing::PropertyTally;

namespace {

void report(const PropertyTally& t) {
    INFO(t.name << ": " << t.failures << " of " << t.instances << " failed, worst " << t.worst);
    CHECK(t.instances >= 100);
    CHECK(t.ok());
}

}  // namespace

TEST_CASE("channel preserves trace, Hermiticity and positivity") {
    PropertyTally trace{"trace", 0, 0, 0.0, 1e-12};
    PropertyTally hermitian{"hermitian", 0, 0, 0.0, 1e-10};
    PropertyTally positive{"positivity", 0, 0, 0.0, 1e-10};
    timebin::testing::channel_properties(200, 1001, trace, hermitian, positive);
    report(trace);
    report(hermitian);
    report(positive);
}

TEST_CASE("expm of anti-Hermitian input is unitary") {
    PropertyTally t{"expm unitarity", 0, 0, 0.0, 1e-12};
    timebin::testing::expm_unitarity(200, 1003, t);
    report(t);
}

TEST_CASE("partial trace preserves the trace") {
    PropertyTally t{"partial trace", 0, 0, 0.0, 1e-12};
    timebin::testing::partial_trace_preservation(200, 1005, t);
    report(t);
}

TEST_CASE("partial trace is linear") {
    Generator gen(1007);
    for (int i = 0; i < 100; ++i) {
        const Dims dims{2, 3};
        const Operator a(gen.matrix(6), dims);
        const Operator b(gen.matrix(6), dims);
        const Complex c{gen.uniform(-2, 2), gen.uniform(-2, 2)};
        const std::size_t keep[] = {gen.index(0, 1)};
        Operator combo = a;
        combo += c * b;
        Operator expected = partial_trace(a, keep);
        expected += c * partial_trace(b, keep);
        CHECK(max_abs_diff(partial_trace(combo, keep), expected) <= 1e-12);
    }
}

TEST_CASE("kron is associative") {
    Generator gen(1009);
    for (int i = 0; i < 100; ++i) {
        const Operator a(gen.matrix(gen.index(1, 3)));
        const Operator b(gen.matrix(gen.index(1, 3)));
        const Operator c(gen.matrix(gen.index(1, 3)));
        // the two groupings round differently, so compare relative to the entries
        const Operator left = kron(kron(a, b), c);
        CHECK(max_abs_diff(left, kron(a, kron(b, c))) <= 1e-15 * std::max(1.0, left.max_norm()));
    }
}

TEST_CASE("dagger is an involutive anti-homomorphism") {
    Generator gen(1011);
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = gen.index(1, 6);
        const Operator a(gen.matrix(n));
        const Operator b(gen.matrix(n));
        CHECK(max_abs_diff(dagger(dagger(a)), a) == 0.0);
        CHECK(max_abs_diff(dagger(a * b), dagger(b) * dagger(a)) <= 1e-13);
    }
}

TEST_CASE("entropy lies between 0 and ln(dim)") {
    Generator gen(1013);
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = gen.index(2, 6);
        // mix a random pure state with a random full-rank state to cover the range
        const double w = gen.uniform(0, 1);
        Operator rho = Complex{w, 0.0} * gen.state({n}).projector();
        rho += Complex{1.0 - w, 0.0} * gen.density({n});
        const double s = vn_entropy(rho);
        CHECK(s >= -1e-12);
        CHECK(s <= std::log(static_cast<double>(n)) + 1e-12);
    }
}

TEST_CASE("dissipator is traceless and Hermitian for random inputs") {
    Generator gen(1015);
    for (int i = 0; i < 100; ++i) {
        const SystemModel sys = timebin::testing::random_system(gen);
        const LindbladModel m = lindblad_model(sys, gen.uniform(0.1, 3));
        const Operator d = liouvillian(m, DensityMatrix(gen.density({sys.dim})));
        CHECK(std::abs(d.trace()) <= 1e-12);
        CHECK(hermiticity_defect(d) <= 1e-12);
    }
}
