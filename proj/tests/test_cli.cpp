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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

#include "weakmeas/cli.hpp"
#include "weakmeas/errors.hpp"

using namespace weakmeas;
using cli::json;

namespace fs = std::filesystem;

namespace {

auto scratch() -> fs::path {
    const auto dir = fs::temp_directory_path() / "weakmeas_cli_tests";
    fs::create_directories(dir);
    return dir;
}

auto slurp(const fs::path &p) -> std::string {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

auto scenario_file(const std::string &name) -> std::string {
    return std::string(WEAKMEAS_SOURCE_DIR) + "/scenarios/" + name;
}

auto base_doc() -> json {
    return json::parse(R"({
        "system_dim": 2,
        "A_matrix": [[1, 0], [0, -1]],
        "theta_deg": 30,
        "gA_tA": 0.05
    })");
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("defaults are filled in by the config layer") {
    const auto s = cli::parse_scenario(base_doc());
    CHECK(s.gf_tf == 1.0);
    CHECK(s.hbar == 1.0);
    CHECK(s.pointer_a.sigma == 1.0);
    CHECK(s.pointer_a.extent == 16.0);
    CHECK(s.pointer_a.n_points == 512);
    CHECK(s.pointer_f.sigma == 0.05);
    CHECK(s.run.threshold == 0.5);
    CHECK(s.run.mode == RunMode::ClosedForm);
    CHECK(std::abs(s.i_vector[1].real() - 0.5) < 1e-15);
    CHECK(std::abs(s.f_vector[1].real() + 0.5) < 1e-15);
}

TEST_CASE("validation names the offending field") {
    auto doc = base_doc();
    doc["A_matrix"] = json::parse("[[[0, 0.1], 1], [1, [0, 0.1]]]");
    try {
        (void)cli::parse_scenario(doc);
        FAIL("expected NotHermitianError");
    } catch (const NotHermitianError &e) {
        CHECK(e.field() == "A_matrix");
    }

    doc = base_doc();
    doc["pointer_A"] = {{"sigma", 1.0}, {"n_points", 512}, {"extent", 4.0}};
    CHECK_THROWS_AS((void)cli::parse_scenario(doc), GridExtentError);

    doc = base_doc();
    doc.erase("theta_deg");
    doc["I_vector"] = {1, 1};
    doc["F_vector"] = {1, 0};
    try {
        (void)cli::parse_scenario(doc);
        FAIL("expected NormalizationError");
    } catch (const NormalizationError &e) {
        CHECK(e.field() == "I_vector");
    }

    doc = base_doc();
    doc["run"] = {{"mode", "bogus"}};
    CHECK_THROWS_AS((void)cli::parse_scenario(doc), ValidationError);
    CHECK_THROWS_AS((void)cli::load_scenario("/nonexistent/scenario.json"), ValidationError);
}

TEST_CASE("exit codes") {
    const auto out = (scratch() / "exit.json").string();
    CHECK(cli::main({"run", "--preset", "qubit-theta30", "--mode", "closed-form",
                     "--out", out}) == cli::kExitOk);
    CHECK(cli::main({"run", "--config", scenario_file("invalid_non_hermitian.json")}) ==
          cli::kExitValidation);
    CHECK(cli::main({"run", "--preset", "no-such-preset"}) == cli::kExitValidation);
    CHECK(cli::main({"run"}) == cli::kExitValidation);
    CHECK(cli::main({"frobnicate"}) == cli::kExitValidation);
    CHECK(cli::main({"sweep", "--preset", "qubit-theta30", "--param", "hbar",
                     "--values", "1"}) == cli::kExitValidation);

    // Nothing passes a threshold beyond the pointer range.
    auto s = cli::preset("qubit-theta30");
    s.run.samples = 1000;
    s.run.threshold = 10.0;
    const auto cfg = scratch() / "empty_selection.json";
    cli::write_atomic(cfg.string(), cli::to_json_text(cli::scenario_to_json(s)));
    CHECK(cli::main({"run", "--config", cfg.string(), "--out", out}) == cli::kExitRuntime);
    CHECK(cli::main({"run", "--preset", "qubit-theta30", "--mode", "closed-form",
                     "--out", "/nonexistent/dir/out.json"}) == cli::kExitRuntime);
}

TEST_CASE("closed-form output") {
    auto s = cli::preset("qubit-theta30");
    s.run.mode = RunMode::ClosedForm;
    const auto doc = cli::run(s);
    CHECK(doc.at("weak_value").at(0).get<double>() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(doc.at("weak_value").at(1).get<double>()) < 1e-12);
    CHECK(doc.at("anomalous").get<bool>());
}

TEST_CASE("diagnostics on the identity preset") {
    const auto doc = cli::run(cli::preset("identity-coupling"));
    for (const auto &chk : doc.at("product_checks")) {
        CHECK(chk.at("is_product").get<bool>());
    }
}

TEST_CASE("json round trip is byte identical") {
    const auto text = cli::to_json_text(cli::run(cli::preset("identity-coupling")));
    CHECK(cli::to_json_text(json::parse(text)) == text);

    const auto scen = cli::to_json_text(cli::scenario_to_json(cli::preset("imaginary-sigma-x")));
    const auto again = cli::to_json_text(
        cli::scenario_to_json(cli::parse_scenario(json::parse(scen))));
    CHECK(scen == again);
}

TEST_CASE("float formatting") {
    CHECK(cli::format_double(0.1) == "0.10000000000000001");
    CHECK(cli::format_double(2.0) == "2");
    CHECK(cli::to_json_text(json{{"b", 1}, {"a", std::nan("")}}) ==
          "{\n  \"a\": null,\n  \"b\": 1\n}\n");
}

TEST_CASE("sweeps") {
    auto s = cli::preset("qubit-theta30");
    s.run.mode = RunMode::ClosedForm;
    const auto rows = cli::sweep(s, "theta", {0.0, 30.0});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].re_formula == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rows[1].re_formula == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(cli::sweep_csv(rows).rfind("param,value,estimate,std_error,re_formula,im_formula,abs_error\n", 0) == 0);

    s.run.mode = RunMode::ExactMoments;
    const auto one = cli::sweep(s, "gA_tA", {0.05});
    REQUIRE(one.size() == 1);
    const auto doc = cli::run(s);
    CHECK(one[0].estimate == doc.at("estimate").get<double>());

    const auto g = cli::sweep(s, "gA_tA", {0.01, 0.02, 0.05, 0.1});
    for (std::size_t k = 1; k < g.size(); ++k) {
        CHECK(g[k].abs_error >= g[k - 1].abs_error);
    }
    CHECK_THROWS_AS((void)cli::sweep(s, "hbar", {1.0}), ValidationError);
}

TEST_CASE("seed precedence and thread independence") {
    const auto dir = scratch();
    auto s = cli::preset("qubit-theta30");
    s.run.samples = 20'000;
    s.run.seed = 1;
    const auto cfg = (dir / "seeded.json").string();
    cli::write_atomic(cfg, cli::to_json_text(cli::scenario_to_json(s)));

    const auto seed_of = [&](const std::string &path) {
        return json::parse(slurp(path)).at("seed").get<std::uint64_t>();
    };
    const auto a = (dir / "a.json").string();
    ::unsetenv("WEAKMEAS_SEED");
    REQUIRE(cli::main({"run", "--config", cfg, "--out", a}) == 0);
    CHECK(seed_of(a) == 1);
    ::setenv("WEAKMEAS_SEED", "7", 1);
    REQUIRE(cli::main({"run", "--config", cfg, "--out", a}) == 0);
    CHECK(seed_of(a) == 7);
    REQUIRE(cli::main({"run", "--config", cfg, "--seed", "9", "--out", a}) == 0);
    CHECK(seed_of(a) == 9);
    ::setenv("WEAKMEAS_SEED", "x", 1);
    CHECK(cli::main({"run", "--config", cfg, "--out", a}) == cli::kExitValidation);
    ::unsetenv("WEAKMEAS_SEED");

    const auto b = (dir / "b.json").string();
    const auto ra = (dir / "ra.csv").string();
    const auto rb = (dir / "rb.csv").string();
    REQUIRE(cli::main({"run", "--config", cfg, "--out", a, "--dump-records", ra}) == 0);
    REQUIRE(cli::main({"run", "--config", cfg, "--out", b, "--dump-records", rb,
                       "--threads", "4"}) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(ra) == slurp(rb));
    CHECK(slurp(ra).rfind("index,value_A,value_F,selected\n", 0) == 0);
}

TEST_CASE("csv output") {
    auto s = cli::preset("qubit-theta30");
    s.run.mode = RunMode::ClosedForm;
    const auto text = cli::to_csv_text(cli::run(s));
    CHECK(text.rfind("key,value\n", 0) == 0);
    CHECK(text.find("\nre_formula,") != std::string::npos);
}

TEST_CASE("presets") {
    const auto names = cli::preset_names();
    CHECK(names.size() >= 2);
    for (const auto &n : names) {
        CHECK_FALSE(cli::preset_description(n).empty());
        CHECK_NOTHROW(validate(cli::preset(n)));
    }
}

} // TEST_SUITE
