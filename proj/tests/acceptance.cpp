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

// Acceptance harness: one PASS/FAIL line per criterion.
// Usage: weakmeas_acceptance [--only N]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "weakmeas/cli.hpp"
#include "weakmeas/entanglement.hpp"
#include "weakmeas/estimator.hpp"
#include "weakmeas/weakvalues.hpp"

using namespace weakmeas;
using cli::json;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

auto seconds_since(Clock::time_point t0) -> double {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

auto fmt(const char *f, auto... args) -> std::string {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

auto random_ket(std::mt19937_64 &rng, std::size_t d) -> Ket {
    std::normal_distribution<double> n01;
    std::vector<cplx> v(d);
    for (auto &c : v) {
        c = {n01(rng), n01(rng)};
    }
    return Ket(std::move(v)).normalized();
}

auto random_hermitian(std::mt19937_64 &rng, std::size_t d) -> Operator {
    std::normal_distribution<double> n01;
    Operator m(d);
    for (std::size_t r = 0; r < d; ++r) {
        m(r, r) = n01(rng);
        for (std::size_t c = r + 1; c < d; ++c) {
            m(r, c) = {n01(rng), n01(rng)};
            m(c, r) = std::conj(m(r, c));
        }
    }
    return m;
}

auto with_mode(Scenario s, RunMode m) -> Scenario {
    s.run.mode = m;
    return s;
}

auto c1() -> Outcome {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(1001);
    std::uniform_int_distribution<std::size_t> dim(2, 6);
    double worst = 0.0;
    for (int n = 0; n < 1000; ++n) {
        const std::size_t d = dim(rng);
        const HermitianOperator a(random_hermitian(rng, d));
        const Ket i = random_ket(rng, d);
        const Ket f = random_ket(rng, d);
        const cplx w = weak_value(a, i, f);
        worst = std::max({worst, std::abs(re_weak_formula(a, i, f) - w.real()),
                          std::abs(im_weak_formula(a, i, f) - w.imag())});
    }
    const double t = seconds_since(t0);
    return {worst <= 1e-10 && t < 5.0,
            fmt("max deviation %.3g over 1000 instances (tol 1e-10), %.2f s", worst, t)};
}

auto c2() -> Outcome {
    const auto doc = cli::run(with_mode(cli::preset("qubit-theta30"), RunMode::ClosedForm));
    const double re = doc.at("weak_value").at(0).get<double>();
    const double im = doc.at("weak_value").at(1).get<double>();
    const bool outside = doc.at("anomalous").get<bool>();
    const double err = std::hypot(re - 2.0, im);
    return {err <= 1e-12 && outside,
            fmt("weak value %.17g%+.3gi, |A_w - 2| = %.3g, outside [-1, 1]: %s", re, im,
                err, outside ? "yes" : "no")};
}

auto c3() -> Outcome {
    std::mt19937_64 rng(3003);
    double worst = 0.0;
    double slowest = 0.0;
    const int trials = 5;
    for (int n = 0; n < trials; ++n) {
        auto s = with_mode(cli::preset("qubit-theta30"), RunMode::ExactMoments);
        s.name = "random-qubit";
        s.theta_deg.reset();
        s.a_matrix = HermitianOperator(random_hermitian(rng, 2));
        s.i_vector = random_ket(rng, 2);
        s.f_vector = random_ket(rng, 2);
        validate(s);
        const auto t0 = Clock::now();
        const auto doc = cli::run(s);
        slowest = std::max(slowest, seconds_since(t0));
        const double expect = s.ga_ta * expectation(s.a_matrix, s.i_vector).real();
        worst = std::max(worst, std::abs(doc.at("mean_x_A").get<double>() - expect));
    }
    return {worst <= 1e-8 && slowest < 1.0,
            fmt("max |mean x_A - g<A>| = %.3g over %d scenarios (tol 1e-8), slowest %.2f s",
                worst, trials, slowest)};
}

auto c4() -> Outcome {
    const auto s = with_mode(cli::preset("qubit-theta30"), RunMode::ExactMoments);
    const auto doc = cli::run(s);
    const double xf = doc.at("mean_x_F").get<double>();
    const double target = 0.25 * s.gf_tf;
    const double err = std::abs(xf - target);
    return {err <= 1e-6, fmt("mean x_F = %.10f, target %.2f, deviation %.3g (tol 1e-6)", xf,
                             target, err)};
}

auto c5() -> Outcome {
    const auto s = with_mode(cli::preset("qubit-theta30"), RunMode::ExactMoments);
    const auto doc = cli::run(s);
    const double ratio = doc.at("correlation_AF").get<double>() / s.ga_ta;
    const std::vector<double> gs{0.01, 0.02, 0.05, 0.1};
    const auto rows = cli::sweep(s, "gA_tA", gs);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto &r : rows) {
        const double lx = std::log(r.value);
        const double ly = std::log(r.abs_error);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = static_cast<double>(rows.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const bool ok = std::abs(ratio - 0.5) <= 0.01 && std::abs(slope - 2.0) <= 0.5;
    return {ok, fmt("<x_A x_F>/g = %.12f (target 0.5 +- 0.01), log-log slope of estimate "
                    "error over g in {0.01..0.1} = %.3f (target 2 +- 0.5)",
                    ratio, slope)};
}

auto sampled(const std::string &preset, RunMode mode) -> json {
    return cli::run(with_mode(cli::preset(preset), mode));
}

auto c6() -> Outcome {
    const auto t0 = Clock::now();
    const auto doc = sampled("qubit-theta30", RunMode::SamplePointer);
    const double t = seconds_since(t0);
    const double est = doc.at("estimate").get<double>();
    return {std::abs(est - 2.0) <= 0.1 && t < 30.0,
            fmt("estimate %.5f +- %.5f from %llu samples (target 2.0 +- 0.1), %.2f s", est,
                doc.at("std_error").get<double>(),
                static_cast<unsigned long long>(doc.at("n_total").get<std::uint64_t>()), t)};
}

auto c7() -> Outcome {
    const auto doc = sampled("imaginary-sigma-x", RunMode::SamplePointer);
    const double est = doc.at("estimate").get<double>();
    return {std::abs(est + 1.0) <= 0.1,
            fmt("estimate %.5f +- %.5f, momentum readout (target -1.0 +- 0.1)", est,
                doc.at("std_error").get<double>())};
}

auto c8() -> Outcome {
    const std::vector<double> xa{2, 2, 2, 2, 2};
    const std::vector<double> xf{1, 0, 0, 0, 0};
    const auto recs = make_records(xa, xf, 0.5);
    const auto sum = summarize(recs, cli::preset("qubit-theta30"));
    const auto chk = boost_identity_check(recs);
    const bool table = std::abs(sum.mean_all_af - 0.4) <= 1e-12 &&
                       std::abs(sum.mean_f - 0.2) <= 1e-12 &&
                       std::abs(sum.mean_selected_af - 2.0) <= 1e-12 && chk.pass;

    std::mt19937_64 rng(8008);
    std::normal_distribution<double> n01;
    std::uniform_real_distribution<double> frac(0.05, 0.95);
    int passed = 0;
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        std::bernoulli_distribution coin(frac(rng));
        std::vector<double> a(10'000);
        std::vector<double> f(10'000);
        for (std::size_t j = 0; j < a.size(); ++j) {
            a[j] = 1.5 + 2.0 * n01(rng);
            f[j] = coin(rng) ? 1.0 : 0.0;
        }
        const auto c = boost_identity_check(make_records(a, f, 0.5));
        passed += c.pass ? 1 : 0;
        worst = std::max(worst, std::abs(c.lhs - c.rhs));
    }
    return {table && passed == 100,
            fmt("small table: <X_A X_F> = %.17g, <X_F> = %.17g, post-selected %.17g; random "
                "datasets %d/100 exact (max |lhs - rhs| %.3g)",
                sum.mean_all_af, sum.mean_f, sum.mean_selected_af, passed, worst)};
}

auto c9() -> Outcome {
    const Ket tilted{std::sqrt(3.0) / 2.0, 0.5};
    const std::vector<PointerGrid> ptrs{gaussian_pointer(1.0, 512, 16.0),
                                        gaussian_pointer(0.05, 512, 4.0)};
    const auto weak = evolve_exact(initial_state(tilted, ptrs),
                                   {HermitianOperator(pauli::z()), 0.05, 0});
    const auto sys = product_check(weak, Bipartition::SystemVsDevices);
    const double second = sys.singular_values.at(1);
    const bool entangled = !*sys.is_product && second > 1e-6;

    const auto ident = evolve_exact(initial_state(tilted, ptrs),
                                    {HermitianOperator(Operator::identity(2)), 0.05, 0});
    bool all_product = true;
    for (auto b : {Bipartition::SystemVsDevices, Bipartition::DeviceAVsRest,
                   Bipartition::DeviceFVsRest}) {
        all_product = all_product && *product_check(ident, b).is_product;
    }
    const double gap = *correlation_witness(ident).correlation_gap;
    return {entangled && all_product && gap <= 1e-10,
            fmt("sigma_z: second Schmidt value %.4g (> 1e-6); identity: product on all cuts "
                "%s, correlation gap %.3g (tol 1e-10)",
                second, all_product ? "yes" : "no", gap)};
}

auto c10() -> Outcome {
    const auto a = sampled("qubit-theta30", RunMode::SamplePointer);
    const auto b = sampled("qubit-theta30", RunMode::SampleIdeal);
    const double ea = a.at("estimate").get<double>();
    const double eb = b.at("estimate").get<double>();
    const double se = std::hypot(a.at("std_error").get<double>(), b.at("std_error").get<double>());
    const double diff = std::abs(ea - eb);
    return {diff <= 3.0 * se,
            fmt("pointer %.5f vs ideal %.5f, |diff| = %.4f, 3 combined SE = %.4f", ea, eb, diff,
                3.0 * se)};
}

auto slurp(const std::filesystem::path &p) -> std::string {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

auto c11() -> Outcome {
    const auto dir = std::filesystem::temp_directory_path() / "weakmeas_acceptance";
    std::filesystem::create_directories(dir);
    const auto out = [&](const std::string &n) { return (dir / n).string(); };
    const std::vector<std::vector<std::string>> runs{
        {"run", "--preset", "qubit-theta30", "--seed", "42", "--out", out("r1.json"),
         "--dump-records", out("d1.csv")},
        {"run", "--preset", "qubit-theta30", "--seed", "42", "--out", out("r2.json"),
         "--dump-records", out("d2.csv")},
        {"run", "--preset", "qubit-theta30", "--seed", "42", "--threads", "4", "--out",
         out("r3.json"), "--dump-records", out("d3.csv")},
    };
    for (const auto &r : runs) {
        if (cli::main(r) != cli::kExitOk) {
            return {false, "a run exited with a non-zero status"};
        }
    }
    const bool same = slurp(out("r1.json")) == slurp(out("r2.json")) &&
                      slurp(out("r1.json")) == slurp(out("r3.json")) &&
                      slurp(out("d1.csv")) == slurp(out("d2.csv")) &&
                      slurp(out("d1.csv")) == slurp(out("d3.csv"));
    return {same, fmt("summary and record dump byte-identical across reruns and "
                      "--threads 1/4: %s",
                      same ? "yes" : "no")};
}

} // namespace

auto main(int argc, char **argv) -> int {
    CLI::App app{"weakmeas acceptance checks"};
    int only = 0;
    app.add_option("--only", only, "Run a single criterion")->check(CLI::Range(1, 11));
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"weak-value re/im identity", c1},
        {"anomalous weak value", c2},
        {"pointer A mean is exact", c3},
        {"pointer F mean", c4},
        {"first-order correlation", c5},
        {"Monte Carlo real part", c6},
        {"Monte Carlo imaginary part", c7},
        {"boost identity", c8},
        {"non-separability", c9},
        {"mode agreement", c10},
        {"determinism", c11},
    };

    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const int id = static_cast<int>(k) + 1;
        if (only != 0 && only != id) {
            continue;
        }
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("criterion %2d %s: %s (%s)\n", id, o.pass ? "PASS" : "FAIL",
                    criteria[k].first.c_str(), o.detail.c_str());
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
