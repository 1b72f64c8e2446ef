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
 * Monte Carlo readouts of the two pointers, post-selection bookkeeping and
 * the weak-value estimates built from them.
 *
 * X_F is binarized: a record is selected when its F-pointer reading exceeds
 * the run threshold, and the selected records count with X_F = 1, the rest
 * with X_F = 0. With that convention the boost identity
 * ⟨X_A X_F⟩^(p) ⟨X_F⟩ = ⟨X_A X_F⟩ is exact arithmetic on every dataset.
 */

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "weakmeas/scenario.hpp"
#include "weakmeas/vonneumann.hpp"

namespace weakmeas {

struct MeasurementRecord {
    double value_a = 0.0; // X_A, or Π_A in momentum readout
    double value_f = 0.0; // X_F
    bool selected = false;
};

/// The scenario quantities an estimate depends on.
struct EstimatorParams {
    Readout readout = Readout::Position;
    double ga_ta = 0.0;
    double gf_tf = 0.0;
    double sigma_a = 0.0;
    double hbar = 0.0;
    double threshold = 0.0;

    static auto from(const Scenario &s) -> EstimatorParams;
    /// Factor turning a post-selected mean of value_a into a weak-value part.
    [[nodiscard]] auto prefactor() const -> double;
};

struct RunSummary {
    std::uint64_t n_total = 0;
    std::uint64_t n_selected = 0;
    double mean_all_af = 0.0;      // ⟨X_A X_F⟩
    double mean_f = 0.0;           // ⟨X_F⟩, binarized
    double mean_value_f = 0.0;     // mean raw F-pointer reading
    double mean_selected_a = 0.0;  // ⟨X_A⟩^(p)
    double mean_selected_af = 0.0; // ⟨X_A X_F⟩^(p)
    double boost = 0.0;            // ⟨X_A X_F⟩^(p) / ⟨X_A X_F⟩
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t seed = 0;
    std::string mode;
    std::string readout;
};

struct BoostCheck {
    double lhs = 0.0; // ⟨X_A X_F⟩^(p) · ⟨X_F⟩
    double rhs = 0.0; // ⟨X_A X_F⟩
    bool pass = false;
};

/**
 * @brief Draws n joint readouts from the exact two-pointer density.
 *
 * Cells are chosen by inverse CDF over the flattened grid and jittered
 * uniformly within the cell. Record k consumes only the Philox stream
 * (seed, k), so the output is identical for any thread count. Passing
 * `first_index` yields records first_index .. first_index + n - 1 of the
 * same run, which lets long runs be generated in chunks.
 */
[[nodiscard]] auto sample_records(const Scenario &s, std::uint64_t n,
                                  std::uint64_t seed, unsigned threads = 1,
                                  std::uint64_t first_index = 0)
    -> std::vector<MeasurementRecord>;

/**
 * @brief Reference sampler with an ideal projective post-selection.
 *
 * After the exact A-coupling the system is projected onto |F⟩ with Born
 * probability; value_f is g_F t_F on success and 0 otherwise, and value_a
 * is drawn from the pointer density conditioned on the outcome.
 */
[[nodiscard]] auto sample_ideal(const Scenario &s, std::uint64_t n,
                                std::uint64_t seed, unsigned threads = 1,
                                std::uint64_t first_index = 0)
    -> std::vector<MeasurementRecord>;

/// Binarizes with `threshold`; used to build records from raw readings.
[[nodiscard]] auto make_records(std::span<const double> value_a,
                                std::span<const double> value_f,
                                double threshold)
    -> std::vector<MeasurementRecord>;

/// @throws EmptyPostSelectionError if no record is selected.
[[nodiscard]] auto summarize(std::span<const MeasurementRecord> records,
                             const EstimatorParams &params) -> RunSummary;
/// Fills the provenance fields from the scenario's run settings as well.
[[nodiscard]] auto summarize(std::span<const MeasurementRecord> records,
                             const Scenario &s) -> RunSummary;

/// @throws EmptyPostSelectionError if no record is selected.
[[nodiscard]] auto boost_identity_check(
    std::span<const MeasurementRecord> records) -> BoostCheck;

/// Expectations of the sampled quantities, computed on the density itself.
struct ExactPostselection {
    double selected_prob = 0.0;   // mass with second coordinate > threshold
    double mean_first = 0.0;      // ⟨first⟩ over everything
    double mean_selected_first = 0.0;
};

/// @throws EmptyPostSelectionError if no mass lies above the threshold.
[[nodiscard]] auto exact_postselection(const Density2D &density,
                                       double threshold) -> ExactPostselection;

} // namespace weakmeas
