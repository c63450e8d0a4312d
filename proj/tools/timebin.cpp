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

// timebin: run one collision-model experiment described by a config file.

#include "timebin/errors.hpp"
#include "timebin/experiment.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"Time-bin collision-model experiments"};
    std::string config_path;
    std::string out_path;
    app.add_option("--config", config_path, "experiment config file (key = value lines)")->required();
    app.add_option("--out", out_path, "CSV output path, overrides out_path in the config");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? timebin::kSuccess : timebin::kConfigError;
    }

    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read config '" << config_path << "'\n";
        return timebin::kConfigError;
    }
    std::stringstream text;
    text << in.rdbuf();

    try {
        timebin::RunConfig cfg = timebin::parse_config(text.str());
        if (!out_path.empty()) {
            cfg.out_path = out_path;
        }
        const timebin::ExperimentOutcome outcome = timebin::run_experiment(cfg);
        std::cout << timebin::to_string(cfg.experiment) << ": " << outcome.summary << '\n';
        return outcome.code;
    } catch (const timebin::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return timebin::kConfigError;
    } catch (const timebin::NumericGuardError& e) {
        std::cerr << "numeric guard: " << e.what() << '\n';
        return timebin::kNumericGuard;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return timebin::kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return timebin::kNumericGuard;
    }
}
