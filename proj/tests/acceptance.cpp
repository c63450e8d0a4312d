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

// acceptance.cpp: one PASS/FAIL line per acceptance criterion; exit status
// is the number of failed criteria

#include "property_checks.hpp"
#include "timebin/experiment.hpp"
#include "timebin/joint_chain.hpp"
#include "timebin/kraus.hpp"
#include "timebin/lindblad.hpp"
#include "timebin/microscopic.hpp"
#include "timebin/model.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

using namespace timebin;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* pattern, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, x);
    return buf;
}

int failures = 0;

void criterion(int id, const char* title, double budget_seconds, const std::function<Verdict()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v = {false, std::string("threw: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = elapsed < budget_seconds;
    const bool pass = v.pass && in_time;
    if (!pass) {
        ++failures;
    }
    std::printf("[%s] %d %s: %s; runtime %.2f s (limit %.0f s)\n", pass ? "PASS" : "FAIL", id, title, v.detail.c_str(),
                elapsed, budget_seconds);
    std::fflush(stdout);
}

DensityMatrix plus_state() {
    Vector v(2);
    v << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
    return DensityMatrix::pure(StateVector(v));
}

Verdict spontaneous_emission() {
    const KrausFamily f = kraus_family(two_level_system(0.0, 0.0), CoarseParams{1.0, 0.01, 2});
    const auto series = iterate_channel(f, DensityMatrix::basis(2, 1), 100);
    const double rho_ee = series.back()(1, 1).real();
    const double exact = std::exp(-1.0);
    const double closed_form = std::pow(std::cos(0.1), 200);
    const bool pinned = std::abs(rho_ee - 0.367569) <= 1e-6;
    const bool near_exact = std::abs(rho_ee - exact) <= 3.5e-4;
    return {pinned && near_exact,
            "rho_ee(1)=" + fmt("%.6f", rho_ee) + " (required 0.367569 +- 1e-6: " + (pinned ? "ok" : "no") +
                "), |rho_ee - e^-1|=" + fmt("%.3e", std::abs(rho_ee - exact)) + " (required <= 3.5e-4: " +
                (near_exact ? "ok" : "no") + "), cos^200(0.1)=" + fmt("%.6f", closed_form) +
                " diff=" + fmt("%.1e", std::abs(rho_ee - closed_form))};
}

Verdict collision_convergence() {
    std::vector<ConvergenceRow> rows;
    for (double dt : {0.1, 0.05, 0.025, 0.0125}) {
        const auto steps = static_cast<std::size_t>(std::llround(5.0 / dt));
        const KrausFamily f = kraus_family(two_level_system(0.0, 0.0), CoarseParams{1.0, dt, 2});
        const auto series = iterate_channel(f, DensityMatrix::basis(2, 1), steps);
        double worst = 0.0;
        for (std::size_t k = 0; k < series.size(); ++k) {
            const DensityMatrix exact =
                analytic_oracle(DecayKind::spontaneous, 1.0, dt * static_cast<double>(k), series.front());
            worst = std::max(worst, std::abs(series[k](1, 1).real() - exact(1, 1).real()));
        }
        rows.push_back({dt, worst});
    }
    const double order = fit_order(rows);
    return {std::abs(order - 1.0) <= 0.15, "fitted order " + fmt("%.4f", order) + " (required 1.0 +- 0.15)"};
}

Verdict kraus_orders() {
    const SystemModel tls = two_level_system(0.0, 0.0);
    std::vector<ConvergenceRow> r1;
    double worst_r2 = 0.0;
    double worst_completeness = 0.0;
    for (double dt : {0.1, 0.05, 0.025, 0.0125}) {
        const KrausFamily f = kraus_family(tls, CoarseParams{1.0, dt, 2});
        const ExpansionResiduals r = expansion_report(f, tls, 1.0);
        r1.push_back({dt, r.r1});
        worst_r2 = std::max(worst_r2, r.r2);
        worst_completeness = std::max(worst_completeness, r.completeness_defect);
    }
    const double order = fit_order(r1);
    return {order >= 1.4 && worst_r2 <= 1e-13 && worst_completeness <= 1e-12,
            "r1 order " + fmt("%.4f", order) + " (>= 1.4), max r2 " + fmt("%.1e", worst_r2) +
                " (<= 1e-13), max completeness defect " + fmt("%.1e", worst_completeness) + " (<= 1e-12)"};
}

Verdict markov_factorization() {
    const std::size_t n = 12;
    const double dt = std::log(2.0) / static_cast<double>(n);
    const CoarseParams p{1.0, dt, 1};
    const Operator u = coarse_map(two_level_system(0.0, 0.0), p);
    const KrausFamily f = extract_kraus(u, 2, p.n_max, dt);
    ChainState chain = init_chain(StateVector::basis({2}, 1), n, p.n_max);
    DensityMatrix reference = chain.initial_system;
    double worst = 0.0;
    double peak = 0.0;
    std::size_t peak_step = 0;
    for (std::size_t k = 0; k <= n; ++k) {
        if (k > 0) {
            advance_chain(chain, u);
            reference = apply_channel(f, reference);
        }
        const FactorizationReport r = factorization_report(chain, reference);
        worst = std::max(worst, r.markov_defect);
        if (r.entropy > peak) {
            peak = r.entropy;
            peak_step = k;
        }
    }
    const bool ok = worst <= 1e-10 && std::abs(peak - 0.6931) <= 2e-3 && peak_step == n;
    return {ok, "max markov_defect " + fmt("%.1e", worst) + " (<= 1e-10), peak entropy " + fmt("%.6f", peak) +
                    " nats at gamma t=" + fmt("%.4f", dt * static_cast<double>(peak_step)) +
                    " (required 0.6931 +- 2e-3 at ln 2)"};
}

Verdict microscopic_rate() {
    const FrequencyGrid grid{1601, 20.0};
    const SurvivalSeries s = evolve_microscopic(build_microscopic(grid, 1.0), grid, 3.0, 300);
    const double rate = -fitted_decay_slope(s, 0.5, 2.5);
    const double rel = std::abs(rate - 1.0);
    return {rel <= 0.03, "fitted rate " + fmt("%.5f", rate) + " gamma, relative error " + fmt("%.2e", rel) +
                             " (<= 3%), norm error " + fmt("%.1e", s.max_norm_error)};
}

Verdict dephasing() {
    const KrausFamily f = kraus_family(dephasing_variant(two_level_system(0.0, 0.0)), CoarseParams{1.0, 0.01, 2});
    const DensityMatrix rho0 = plus_state();
    const auto series = iterate_channel(f, rho0, 100);
    double drift = 0.0;
    for (const auto& rho : series) {
        drift = std::max({drift, std::abs(rho(0, 0) - rho0(0, 0)), std::abs(rho(1, 1) - rho0(1, 1))});
    }
    const double coherence = std::abs(series.back()(1, 0));
    return {drift <= 1e-12 && std::abs(coherence - 0.303265) <= 5e-4,
            "population drift " + fmt("%.1e", drift) + " (<= 1e-12), |rho_eg(1)|=" + fmt("%.6f", coherence) +
                " (required 0.303265 +- 5e-4, e^-1/2 / 2 = " + fmt("%.6f", 0.5 * std::exp(-0.5)) + ")"};
}

Verdict property_suite() {
    using timebin::testing::PropertyTally;
    PropertyTally trace{"trace", 0, 0, 0.0, 1e-12};
    PropertyTally hermitian{"hermiticity", 0, 0, 0.0, 1e-10};
    PropertyTally positive{"positivity", 0, 0, 0.0, 1e-10};
    PropertyTally unitary{"expm unitarity", 0, 0, 0.0, 1e-12};
    PropertyTally ptrace{"partial trace", 0, 0, 0.0, 1e-12};
    timebin::testing::channel_properties(200, 7001, trace, hermitian, positive);
    timebin::testing::expm_unitarity(200, 7003, unitary);
    timebin::testing::partial_trace_preservation(200, 7005, ptrace);
    bool ok = true;
    std::string detail;
    for (const PropertyTally* t : {&trace, &hermitian, &positive, &unitary, &ptrace}) {
        ok = ok && t->ok() && t->instances >= 100;
        if (!detail.empty()) {
            detail += ", ";
        }
        detail += t->name + " " + std::to_string(t->instances - t->failures) + "/" + std::to_string(t->instances) +
                  " worst " + fmt("%.1e", t->worst);
    }
    return {ok, detail};
}

Verdict ordering_probe() {
    const auto order_for = [](double drive) {
        std::vector<ConvergenceRow> rows;
        for (double dt : {0.1, 0.05, 0.025}) {
            rows.push_back({dt, ordering_residual(two_level_system(0.0, drive), CoarseParams{1.0, dt, 2}, 64)});
        }
        return fit_order(rows);
    };
    const double driven = order_for(1.0);
    const double undriven = order_for(0.0);
    return {driven >= 1.4 && undriven >= 1.9,
            "driven order " + fmt("%.4f", driven) + " (>= 1.4), undriven order " + fmt("%.4f", undriven) + " (>= 1.9)"};
}

}  // namespace

int main() {
    criterion(1, "spontaneous-emission decay", 1.0, spontaneous_emission);
    criterion(2, "collision to Lindblad convergence", 5.0, collision_convergence);
    criterion(3, "Kraus expansion orders", 1.0, kraus_orders);
    criterion(4, "Markov recursion and factorization", 5.0, markov_factorization);
    criterion(5, "microscopic oracle", 30.0, microscopic_rate);
    criterion(6, "dephasing variant", 1.0, dephasing);
    criterion(7, "property suite", 10.0, property_suite);
    criterion(8, "ordering-residual probe", 5.0, ordering_probe);
    std::printf("%d of 8 criteria failed\n", failures);
    return failures;
}
