// Copyright 2026 The weakmeas Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Command-line front end: scenario files, presets, run-mode dispatch and
 * canonical JSON/CSV output.
 *
 * Exit codes: 0 success, 2 usage or validation error, 3 runtime error.
 */

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "weakmeas/scenario.hpp"

namespace weakmeas::cli {

using json = nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitRuntime = 3;

[[nodiscard]] auto preset_names() -> std::vector<std::string>;
[[nodiscard]] auto preset_description(const std::string &name) -> std::string;
/// @throws ValidationError for an unknown preset.
[[nodiscard]] auto preset(const std::string &name) -> Scenario;

/// Parses and validates a scenario document, filling CLI defaults.
[[nodiscard]] auto parse_scenario(const json &doc) -> Scenario;
[[nodiscard]] auto load_scenario(const std::string &path) -> Scenario;
[[nodiscard]] auto scenario_to_json(const Scenario &s) -> json;

struct RunOptions {
    unsigned threads = 1;
    std::optional<std::string> dump_records;
};

/// Executes the scenario's run mode and returns the result document.
[[nodiscard]] auto run(const Scenario &s, const RunOptions &opts = {}) -> json;

struct SweepRow {
    std::string param;
    double value = 0.0;
    double estimate = 0.0;
    double std_error = 0.0;
    double re_formula = 0.0;
    double im_formula = 0.0;
    double abs_error = 0.0;
};

/// @throws ValidationError for a parameter other than gA_tA, theta, sigma_F.
[[nodiscard]] auto sweep(const Scenario &s, const std::string &param,
                         const std::vector<double> &values,
                         unsigned threads = 1) -> std::vector<SweepRow>;
[[nodiscard]] auto sweep_csv(const std::vector<SweepRow> &rows) -> std::string;

/// Doubles printed with 17 significant digits, keys sorted, 2-space indent.
[[nodiscard]] auto to_json_text(const json &doc) -> std::string;
/// Flattened `key,value` lines.
[[nodiscard]] auto to_csv_text(const json &doc) -> std::string;
[[nodiscard]] auto format_double(double v) -> std::string;

/// Writes to `path + ".tmp"` and renames over `path`.
void write_atomic(const std::string &path, const std::string &content);

/// Full command-line entry point; args excludes the program name.
[[nodiscard]] auto main(const std::vector<std::string> &args) -> int;

} // namespace weakmeas::cli
