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

#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "weakmeas/cli.hpp"
#include "weakmeas/errors.hpp"
#include "weakmeas/estimator.hpp"

using namespace weakmeas;

namespace {

auto theta30() -> Scenario { return cli::preset("qubit-theta30"); }

auto same_records(const std::vector<MeasurementRecord> &a,
                  const std::vector<MeasurementRecord> &b) -> bool {
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k].value_a != b[k].value_a || a[k].value_f != b[k].value_f ||
            a[k].selected != b[k].selected) {
            return false;
        }
    }
    return true;
}

// Streams n records through in chunks so memory stays bounded.
auto chunked_estimate(const Scenario &s, std::uint64_t n, std::uint64_t seed)
    -> RunSummary {
    constexpr std::uint64_t kChunk = 5'000'000;
    double sum = 0.0;
    double sq = 0.0;
    std::uint64_t ns = 0;
    for (std::uint64_t start = 0; start < n; start += kChunk) {
        const auto recs = sample_records(s, std::min(kChunk, n - start), seed, 1, start);
        for (const auto &r : recs) {
            if (r.selected) {
                sum += r.value_a;
                sq += r.value_a * r.value_a;
                ++ns;
            }
        }
    }
    RunSummary out;
    out.n_total = n;
    out.n_selected = ns;
    const double mean = sum / static_cast<double>(ns);
    const double var = (sq - static_cast<double>(ns) * mean * mean) /
                       static_cast<double>(ns - 1);
    out.estimate = mean / s.ga_ta;
    out.std_error = std::sqrt(var / static_cast<double>(ns)) / s.ga_ta;
    return out;
}

} // namespace

TEST_SUITE("estimator") {

TEST_CASE("five-record binarized dataset") {
    const std::vector<double> xa{2, 2, 2, 2, 2};
    const std::vector<double> xf{1, 0, 0, 0, 0};
    const auto recs = make_records(xa, xf, 0.5);
    EstimatorParams p;
    p.readout = Readout::Position;
    p.ga_ta = 1.0;
    p.gf_tf = 1.0;
    p.threshold = 0.5;
    const auto s = summarize(recs, p);
    CHECK(s.mean_all_af == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(s.mean_f == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(s.mean_selected_af == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(s.boost == doctest::Approx(5.0).epsilon(1e-15));
    const auto b = boost_identity_check(recs);
    CHECK(b.pass);
    CHECK(std::abs(b.lhs - 0.4) < 1e-15);
    CHECK(std::abs(b.rhs - 0.4) < 1e-15);
}

TEST_CASE("all selected gives unit boost") {
    const std::vector<double> xa{0.3, -1.2, 4.0};
    const std::vector<double> xf{1, 1, 1};
    const auto recs = make_records(xa, xf, 0.5);
    EstimatorParams p{Readout::Position, 1.0, 1.0, 1.0, 1.0, 0.5};
    const auto s = summarize(recs, p);
    CHECK(s.mean_selected_a == doctest::Approx(3.1 / 3.0));
    CHECK(s.boost == doctest::Approx(1.0));
    const auto b = boost_identity_check(recs);
    CHECK(b.pass);
    CHECK(b.lhs == doctest::Approx(3.1 / 3.0));
}

TEST_CASE("boost identity on random binarized datasets") {
    std::mt19937_64 rng(77);
    std::normal_distribution<double> n01;
    std::bernoulli_distribution coin(0.3);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> xa(10'000);
        std::vector<double> xf(10'000);
        for (std::size_t k = 0; k < xa.size(); ++k) {
            xa[k] = 2.0 + 3.0 * n01(rng);
            xf[k] = coin(rng) ? 1.0 : 0.0;
        }
        CHECK(boost_identity_check(make_records(xa, xf, 0.5)).pass);
    }
}

TEST_CASE("empty and invalid inputs") {
    const auto s = theta30();
    CHECK(sample_records(s, 0, 1).empty());
    CHECK(sample_ideal(s, 0, 1).empty());
    const std::vector<MeasurementRecord> none;
    CHECK_THROWS_AS((void)summarize(none, s), EmptyPostSelectionError);
    CHECK_THROWS_AS((void)boost_identity_check(none), EmptyPostSelectionError);
    const std::vector<double> a{1.0};
    const std::vector<double> f{0.0, 1.0};
    CHECK_THROWS_AS((void)make_records(a, f, 0.5), DimensionError);
    const std::vector<double> z{0.0, 0.0};
    CHECK_THROWS_AS((void)summarize(make_records(z, z, 0.5), s), EmptyPostSelectionError);
}

TEST_CASE("single selected record has no standard error") {
    const std::vector<double> xa{1.0, 2.0};
    const std::vector<double> xf{1.0, 0.0};
    const auto s = summarize(make_records(xa, xf, 0.5), theta30());
    CHECK(std::isnan(s.std_error));
}

TEST_CASE("prefactors") {
    EstimatorParams p{Readout::Position, 0.05, 1.0, 1.0, 1.0, 0.5};
    CHECK(p.prefactor() == doctest::Approx(20.0));
    p.readout = Readout::Momentum;
    CHECK(p.prefactor() == doctest::Approx(40.0));
    p.sigma_a = 2.0;
    p.hbar = 0.5;
    CHECK(p.prefactor() == doctest::Approx(2.0 * 4.0 / (0.5 * 0.05)));
}

TEST_CASE("identity observable shifts every reading") {
    auto s = theta30();
    s.a_matrix = HermitianOperator(Operator::identity(2));
    const std::uint64_t n = 200'000;
    const auto recs = sample_records(s, n, 5);
    double sum = 0.0;
    double sq = 0.0;
    for (const auto &r : recs) {
        sum += r.value_a;
        sq += r.value_a * r.value_a;
    }
    const double mean = sum / n;
    CHECK(std::abs(mean - s.ga_ta) < 3.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::sqrt(sq / n - mean * mean) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("selected fraction follows the Born rule") {
    const auto s = theta30();
    const auto recs = sample_records(s, 1'000'000, 42);
    const auto sum = summarize(recs, s);
    const double tol = 3.0 * std::sqrt(0.25 * 0.75 / 1e6);
    CHECK(std::abs(sum.mean_f - 0.25) < tol);
    CHECK(std::abs(sum.estimate - 2.0) < 0.1);
    CHECK(sum.std_error == doctest::Approx(0.04).epsilon(0.1));
    CHECK(boost_identity_check(recs).pass);
}

TEST_CASE("records do not depend on thread count or chunking") {
    const auto s = theta30();
    const auto one = sample_records(s, 50'000, 9, 1);
    CHECK(same_records(one, sample_records(s, 50'000, 9, 4)));
    CHECK(same_records(one, sample_records(s, 50'000, 9, 3)));
    const auto tail = sample_records(s, 20'000, 9, 2, 30'000);
    CHECK(same_records(std::vector<MeasurementRecord>(one.begin() + 30'000, one.end()), tail));
    CHECK_FALSE(same_records(one, sample_records(s, 50'000, 10, 1)));

    const auto ideal = sample_ideal(s, 50'000, 9, 1);
    CHECK(same_records(ideal, sample_ideal(s, 50'000, 9, 4)));
}

TEST_CASE("ideal projection sampling") {
    const auto s = theta30();
    const auto recs = sample_ideal(s, 1'000'000, 42);
    const auto sum = summarize(recs, s);
    // P(F) = 10/16 - 6/16 exp(-g²/2)
    const double pf = 10.0 / 16 - 6.0 / 16 * std::exp(-0.05 * 0.05 / 2);
    CHECK(std::abs(sum.mean_f - pf) < 3.0 * std::sqrt(pf * (1 - pf) / 1e6));
    CHECK(std::abs(sum.estimate - 2.0) < 0.1);
    for (std::size_t k = 0; k < 1000; ++k) {
        CHECK((recs[k].value_f == 0.0 || recs[k].value_f == 1.0));
    }

    auto orth = s;
    orth.i_vector = Ket{1.0, 0.0};
    orth.f_vector = Ket{0.0, 1.0};
    orth.ga_ta = 0.0;
    for (const auto &r : sample_ideal(orth, 10'000, 1)) {
        CHECK_FALSE(r.selected);
    }
}

TEST_CASE("imaginary part from momentum readout") {
    const auto s = cli::preset("imaginary-sigma-x");
    const auto sum = summarize(sample_records(s, 1'000'000, s.run.seed), s);
    CHECK(sum.readout == "momentum");
    CHECK(std::abs(sum.estimate + 1.0) < 0.1);
}

TEST_CASE("pointer and ideal modes agree") {
    const auto s = theta30();
    const auto a = summarize(sample_records(s, 1'000'000, 42), s);
    const auto b = summarize(sample_ideal(s, 1'000'000, 42), s);
    const double combined = std::hypot(a.std_error, b.std_error);
    CHECK(std::abs(a.estimate - b.estimate) <= 3.0 * combined);
}

TEST_CASE("exact post-selection on the joint density") {
    const auto s = theta30();
    const auto e = exact_postselection(device_density(final_state(s)), 0.5);
    const double g = 0.05;
    CHECK(e.selected_prob == doctest::Approx(10.0 / 16 - 6.0 / 16 * std::exp(-g * g / 2)).epsilon(1e-9));
    CHECK(e.mean_first == doctest::Approx(0.5 * g).epsilon(1e-9));
    // ⟨x_A F̂⟩ / ⟨F̂⟩ = g/2 / P(F)
    CHECK(e.mean_selected_first / g ==
          doctest::Approx(0.5 / e.selected_prob).epsilon(1e-9));
}

TEST_CASE("estimate converges as the coupling weakens" * doctest::timeout(120)) {
    auto weak = theta30();
    weak.ga_ta = 0.02;
    auto strong = theta30();
    strong.ga_ta = 0.2;
    const std::uint64_t n = 30'000'000;
    const auto ew = chunked_estimate(weak, n, 123);
    const auto es = chunked_estimate(strong, n, 123);
    CHECK(ew.std_error <= 0.02);
    CHECK(es.std_error <= 0.02);
    CHECK(std::abs(ew.estimate - 2.0) < 0.1);
    CHECK(std::abs(es.estimate - 2.0) > std::abs(ew.estimate - 2.0));
}

} // TEST_SUITE
