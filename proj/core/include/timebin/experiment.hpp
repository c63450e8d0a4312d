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

// experiment.hpp: config parsing, named experiments, CSV output, order fits

#pragma once

#include "timebin/kraus.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace timebin {

enum class ExperimentKind { lindblad, collision, kraus_report, joint_chain, microscopic, convergence, ordering_probe };
enum class SystemKind { tls, tls_driven, oscillator3, dephasing };

std::string_view to_string(ExperimentKind kind);
std::string_view to_string(SystemKind kind);

/// Flat experiment description. Every key in the config file maps to one
/// field here; parse_config fills the rest with defaults.
struct RunConfig {
    ExperimentKind experiment = ExperimentKind::collision;
    double gamma = 1.0;
    double dt = 0.01;
    double t_final = 1.0;
    std::size_t n_max = 2;
    std::size_t n_bins = 12;
    SystemKind system = SystemKind::tls;
    double omega0 = 0.0;
    std::optional<double> drive;  // tls-driven defaults to 1, everything else to 0
    std::string out_path;

    // microscopic grid; half_width defaults to 20 gamma
    std::size_t n_modes = 1601;
    std::optional<double> half_width;
    // ordering-probe sub-bins per coarse bin
    int subdivisions = 64;

    double drive_or_default() const;
    double half_width_or_default() const;
    /// Number of time steps covering t_final, rounded to nearest.
    std::size_t steps() const;
};

/// Parses `key = value` lines; `#` starts a comment. Throws ConfigError for
/// unknown keys, unparsable values, invalid values, and a missing experiment.
RunConfig parse_config(std::string_view text);

struct ConvergenceRow {
    double dt = 0.0;
    double max_error = 0.0;
};

/// Least-squares slope of ln(error) against ln(dt). Needs >= 3 rows with
/// positive errors; throws std::invalid_argument otherwise.
double fit_order(std::span<const ConvergenceRow> rows);

/// One time-series sample. Columns beyond the density matrix are filled only
/// by the joint-chain experiment.
struct TimeSeriesRow {
    double t = 0.0;
    DensityMatrix rho;
    std::optional<double> entropy;
    std::optional<double> markov_defect;
};

void write_timeseries_csv(std::ostream& os, std::span<const TimeSeriesRow> rows);
void write_convergence_csv(std::ostream& os, std::span<const ConvergenceRow> rows, double fitted_order);
void write_kraus_report_csv(std::ostream& os, std::span<const ExpansionResiduals> rows);

/// 17 significant digits, '.' decimal separator.
std::string format_double(double x);

enum ExitCode : int { kSuccess = 0, kToleranceFailure = 1, kConfigError = 2, kNumericGuard = 3 };

struct ExperimentOutcome {
    ExitCode code = kSuccess;
    std::string summary;  // one line, no trailing newline
};

/// Runs the configured experiment, writing its CSV to `csv`.
/// Throws ConfigError for unsupported combinations and NumericGuardError when
/// a module guard trips.
ExperimentOutcome run_experiment(const RunConfig& cfg, std::ostream& csv);

/// Same, writing to cfg.out_path (or "<experiment>.csv" when empty).
/// Throws std::runtime_error when the file cannot be written.
ExperimentOutcome run_experiment(const RunConfig& cfg);

}  // namespace timebin
