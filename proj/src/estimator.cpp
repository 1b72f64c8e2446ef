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

#include "weakmeas/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "weakmeas/errors.hpp"
#include "weakmeas/fourier.hpp"
#include "weakmeas/philox.hpp"

namespace weakmeas {

namespace {

// Neumaier-compensated running sum.
class Accumulator {
  public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    [[nodiscard]] auto value() const -> double { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Inverse-CDF sampler over a flattened mass table.
class CellSampler {
  public:
    explicit CellSampler(std::span<const double> mass) : cdf_(mass.size()) {
        double run = 0.0;
        for (std::size_t i = 0; i < mass.size(); ++i) {
            run += std::max(mass[i], 0.0);
            cdf_[i] = run;
        }
    }

    [[nodiscard]] auto total() const -> double {
        return cdf_.empty() ? 0.0 : cdf_.back();
    }

    [[nodiscard]] auto pick(double u) const -> std::size_t {
        const double target = u * total();
        auto it = std::upper_bound(cdf_.begin(), cdf_.end(), target);
        if (it == cdf_.end()) {
            --it;
        }
        return static_cast<std::size_t>(it - cdf_.begin());
    }

  private:
    std::vector<double> cdf_;
};

template <class Fn>
void parallel_fill(std::vector<MeasurementRecord> &out, unsigned threads,
                   Fn &&make) {
    const std::size_t n = out.size();
    const std::size_t workers =
        std::max<std::size_t>(1, std::min<std::size_t>(threads, n));
    if (workers == 1) {
        for (std::size_t k = 0; k < n; ++k) {
            out[k] = make(k);
        }
        return;
    }
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        pool.emplace_back([&out, &make, begin, end] {
            for (std::size_t k = begin; k < end; ++k) {
                out[k] = make(k);
            }
        });
    }
}

auto first_axis_coords(const GridParams &g, Readout r) -> std::vector<double> {
    std::vector<double> c(g.n_points);
    for (std::size_t k = 0; k < g.n_points; ++k) {
        c[k] = r == Readout::Position ? g.position(k) : g.momentum(k);
    }
    return c;
}

// Amplitudes of a single-pointer joint state with the pointer in the
// requested representation, as a d x n table. Momentum amplitudes carry a
// per-bin factor common to all system components, which cancels in every
// density built from them.
auto single_axis_table(const JointState &s, Readout r) -> std::vector<cplx> {
    std::vector<cplx> amps(s.amplitudes().begin(), s.amplitudes().end());
    if (r == Readout::Position) {
        return amps;
    }
    const auto shape = s.shape();
    fourier::transform_axis(amps, shape, 1, fourier::Direction::Forward);
    const std::size_t n = shape[1];
    std::vector<cplx> out(amps.size());
    for (std::size_t sys = 0; sys < shape[0]; ++sys) {
        for (std::size_t k = 0; k < n; ++k) {
            const long long signed_k =
                static_cast<long long>(k) - static_cast<long long>(n / 2);
            out[sys * n + k] = amps[sys * n + fourier::bin_of(signed_k, n)];
        }
    }
    return out;
}

} // namespace

auto EstimatorParams::from(const Scenario &s) -> EstimatorParams {
    return {s.run.readout, s.ga_ta, s.gf_tf, s.pointer_a.sigma, s.hbar,
            s.run.threshold};
}

auto EstimatorParams::prefactor() const -> double {
    if (readout == Readout::Position) {
        return 1.0 / ga_ta;
    }
    return 2.0 * sigma_a * sigma_a / (hbar * ga_ta);
}

auto sample_records(const Scenario &s, std::uint64_t n, std::uint64_t seed,
                    unsigned threads, std::uint64_t first_index)
    -> std::vector<MeasurementRecord> {
    if (n == 0) {
        return {};
    }
    const auto state = final_state(s);
    const Density2D density = s.run.readout == Readout::Position
                                  ? device_density(state)
                                  : device_momentum_density(state);
    const CellSampler sampler(density.values);
    const std::size_t nf = density.second.size();
    const double threshold = s.run.threshold;

    std::vector<MeasurementRecord> out(n);
    parallel_fill(out, threads, [&](std::size_t k) {
        CounterStream rng(seed, first_index + k);
        const std::size_t cell = sampler.pick(rng.uniform());
        const double ja = rng.uniform() - 0.5;
        const double jf = rng.uniform() - 0.5;
        MeasurementRecord r;
        r.value_a = density.first[cell / nf] + ja * density.d_first;
        r.value_f = density.second[cell % nf] + jf * density.d_second;
        r.selected = r.value_f > threshold;
        return r;
    });
    return out;
}

auto sample_ideal(const Scenario &s, std::uint64_t n, std::uint64_t seed,
                  unsigned threads, std::uint64_t first_index)
    -> std::vector<MeasurementRecord> {
    if (n == 0) {
        return {};
    }
    const auto state = state_after_a(s);
    const auto table = single_axis_table(state, s.run.readout);
    const std::size_t d = state.system_dim();
    const GridParams grid = state.axes()[0];
    const std::size_t np = grid.n_points;

    // Split each pointer cell into its |F⟩ and (1 - F̂) components.
    std::vector<double> mass_sel(np, 0.0);
    std::vector<double> mass_rest(np, 0.0);
    for (std::size_t k = 0; k < np; ++k) {
        cplx f_amp = 0.0;
        for (std::size_t sys = 0; sys < d; ++sys) {
            f_amp += std::conj(s.f_vector[sys]) * table[sys * np + k];
        }
        mass_sel[k] = std::norm(f_amp);
        double rest = 0.0;
        for (std::size_t sys = 0; sys < d; ++sys) {
            rest += std::norm(table[sys * np + k] - s.f_vector[sys] * f_amp);
        }
        mass_rest[k] = rest;
    }
    const CellSampler sel(mass_sel);
    const CellSampler rest(mass_rest);
    const double p_sel = sel.total() / (sel.total() + rest.total());

    const auto coords = first_axis_coords(grid, s.run.readout);
    const double width =
        s.run.readout == Readout::Position ? grid.dx() : grid.dp();
    const double gf = s.gf_tf;
    const double threshold = s.run.threshold;

    std::vector<MeasurementRecord> out(n);
    parallel_fill(out, threads, [&](std::size_t k) {
        CounterStream rng(seed, first_index + k);
        const bool hit = rng.uniform() < p_sel;
        const std::size_t cell = (hit ? sel : rest).pick(rng.uniform());
        MeasurementRecord r;
        r.value_a = coords[cell] + (rng.uniform() - 0.5) * width;
        r.value_f = hit ? gf : 0.0;
        r.selected = r.value_f > threshold;
        return r;
    });
    return out;
}

auto make_records(std::span<const double> value_a,
                  std::span<const double> value_f, double threshold)
    -> std::vector<MeasurementRecord> {
    if (value_a.size() != value_f.size()) {
        throw DimensionError("value_A and value_F differ in length");
    }
    std::vector<MeasurementRecord> out(value_a.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = {value_a[k], value_f[k], value_f[k] > threshold};
    }
    return out;
}

auto summarize(std::span<const MeasurementRecord> records,
               const EstimatorParams &params) -> RunSummary {
    RunSummary out;
    out.n_total = records.size();
    Accumulator all_af;
    Accumulator raw_f;
    Accumulator sel_a;
    for (const auto &r : records) {
        raw_f.add(r.value_f);
        if (r.selected) {
            ++out.n_selected;
            all_af.add(r.value_a);
            sel_a.add(r.value_a);
        }
    }
    if (out.n_selected == 0) {
        throw EmptyPostSelectionError("no record passed the post-selection");
    }
    const auto n = static_cast<double>(out.n_total);
    const auto ns = static_cast<double>(out.n_selected);
    out.mean_all_af = all_af.value() / n;
    out.mean_f = ns / n;
    out.mean_value_f = raw_f.value() / n;
    out.mean_selected_a = sel_a.value() / ns;
    out.mean_selected_af = out.mean_selected_a;
    out.boost = out.mean_all_af != 0.0
                    ? out.mean_selected_af / out.mean_all_af
                    : std::numeric_limits<double>::quiet_NaN();

    const double pref = params.prefactor();
    out.estimate = pref * out.mean_selected_a;
    if (out.n_selected >= 2) {
        Accumulator sq;
        for (const auto &r : records) {
            if (r.selected) {
                const double dev = r.value_a - out.mean_selected_a;
                sq.add(dev * dev);
            }
        }
        const double var = sq.value() / (ns - 1.0);
        out.std_error = std::abs(pref) * std::sqrt(var / ns);
    } else {
        out.std_error = std::numeric_limits<double>::quiet_NaN();
    }
    out.readout = to_string(params.readout);
    return out;
}

auto summarize(std::span<const MeasurementRecord> records, const Scenario &s)
    -> RunSummary {
    auto out = summarize(records, EstimatorParams::from(s));
    out.seed = s.run.seed;
    out.mode = to_string(s.run.mode);
    return out;
}

auto boost_identity_check(std::span<const MeasurementRecord> records)
    -> BoostCheck {
    Accumulator all_af;
    std::uint64_t ns = 0;
    for (const auto &r : records) {
        if (r.selected) {
            all_af.add(r.value_a);
            ++ns;
        }
    }
    if (ns == 0) {
        throw EmptyPostSelectionError("no record passed the post-selection");
    }
    const auto n = static_cast<double>(records.size());
    const double mean_all_af = all_af.value() / n;
    const double mean_sel_af = all_af.value() / static_cast<double>(ns);
    const double mean_f = static_cast<double>(ns) / n;

    BoostCheck out;
    out.lhs = mean_sel_af * mean_f;
    out.rhs = mean_all_af;
    out.pass = std::abs(out.lhs - out.rhs) <=
               1e-12 * std::max(1.0, std::abs(out.rhs));
    return out;
}

auto exact_postselection(const Density2D &density, double threshold)
    -> ExactPostselection {
    const std::size_t na = density.first.size();
    const std::size_t nf = density.second.size();
    Accumulator total;
    Accumulator first;
    Accumulator sel;
    Accumulator sel_first;
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < nf; ++j) {
            const double p = density.at(i, j);
            total.add(p);
            first.add(p * density.first[i]);
            if (density.second[j] > threshold) {
                sel.add(p);
                sel_first.add(p * density.first[i]);
            }
        }
    }
    if (!(sel.value() > 0.0)) {
        throw EmptyPostSelectionError("no probability mass above threshold");
    }
    ExactPostselection out;
    out.selected_prob = sel.value() / total.value();
    out.mean_first = first.value() / total.value();
    out.mean_selected_first = sel_first.value() / sel.value();
    return out;
}

} // namespace weakmeas
