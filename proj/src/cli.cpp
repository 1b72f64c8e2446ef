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

#include "weakmeas/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "weakmeas/entanglement.hpp"
#include "weakmeas/errors.hpp"
#include "weakmeas/estimator.hpp"
#include "weakmeas/weakvalues.hpp"

namespace weakmeas::cli {

namespace {

// ---- defaults -------------------------------------------------------------

constexpr std::size_t kDefaultPoints = 512;
constexpr double kDefaultSigmaA = 1.0;
constexpr double kDefaultSigmaF = 0.05;
constexpr std::uint64_t kDefaultSamples = 1'000'000;

auto default_pointer_a(double sigma) -> PointerConfig {
    return {sigma, kDefaultPoints, 16.0 * sigma};
}

// Wide enough for the F̂ = 1 branch displaced by g_F t_F.
auto default_pointer_f(double sigma, double gf_tf) -> PointerConfig {
    return {sigma, kDefaultPoints,
            std::max(80.0 * sigma, 4.0 * std::abs(gf_tf))};
}

auto qubit_base(const std::string &name) -> Scenario {
    Scenario s;
    s.name = name;
    s.system_dim = 2;
    s.ga_ta = 0.05;
    s.gf_tf = 1.0;
    s.hbar = 1.0;
    s.pointer_a = default_pointer_a(kDefaultSigmaA);
    s.pointer_f = default_pointer_f(kDefaultSigmaF, s.gf_tf);
    s.run.mode = RunMode::SamplePointer;
    s.run.readout = Readout::Position;
    s.run.samples = kDefaultSamples;
    s.run.seed = 42;
    s.run.threshold = 0.5 * s.gf_tf;
    return s;
}

struct PresetInfo {
    const char *name;
    const char *description;
};

constexpr PresetInfo kPresets[] = {
    {"qubit-theta30",
     "A = sigma_z, I = (cos 30, sin 30), F = (cos 30, -sin 30); weak value 2"},
    {"imaginary-sigma-x",
     "A = sigma_x, I = |0>, F = (|0> + i|1>)/sqrt2, momentum readout; weak "
     "value -i"},
    {"identity-coupling",
     "A = identity on the theta = 30 states; no entanglement is generated"},
};

// ---- JSON helpers ---------------------------------------------------------

auto complex_to_json(cplx c) -> json { return json::array({c.real(), c.imag()}); }

auto field_error(const std::string &field, const std::string &msg)
    -> ValidationError {
    return ValidationError(field + ": " + msg, field);
}

auto get_number(const json &j, const std::string &field) -> double {
    if (!j.is_number()) {
        throw field_error(field, "expected a number");
    }
    return j.get<double>();
}

auto get_count(const json &j, const std::string &field) -> std::uint64_t {
    if (j.is_number_unsigned()) {
        return j.get<std::uint64_t>();
    }
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0) {
        return static_cast<std::uint64_t>(j.get<std::int64_t>());
    }
    throw field_error(field, "expected a non-negative integer");
}

auto get_complex(const json &j, const std::string &field) -> cplx {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw field_error(field, "expected [re, im]");
}

auto get_vector(const json &j, const std::string &field, std::size_t dim)
    -> Ket {
    if (!j.is_array() || j.size() != dim) {
        throw field_error(field, "expected " + std::to_string(dim) +
                                     " complex entries");
    }
    std::vector<cplx> v;
    for (std::size_t i = 0; i < dim; ++i) {
        v.push_back(get_complex(j[i], field + "[" + std::to_string(i) + "]"));
    }
    return Ket(std::move(v));
}

auto get_matrix(const json &j, const std::string &field, std::size_t dim)
    -> Operator {
    if (!j.is_array() || j.size() != dim) {
        throw field_error(field, "expected " + std::to_string(dim) + " rows");
    }
    Operator op(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        if (!j[r].is_array() || j[r].size() != dim) {
            throw field_error(field, "row " + std::to_string(r) + " must have " +
                                         std::to_string(dim) + " entries");
        }
        for (std::size_t c = 0; c < dim; ++c) {
            op(r, c) = get_complex(j[r][c], field);
        }
    }
    return op;
}

auto parse_pointer(const json &doc, const std::string &field,
                   PointerConfig def) -> PointerConfig {
    if (!doc.contains(field)) {
        return def;
    }
    const json &p = doc.at(field);
    if (!p.is_object()) {
        throw field_error(field, "expected an object");
    }
    PointerConfig out = def;
    if (p.contains("sigma")) {
        out.sigma = get_number(p.at("sigma"), field + ".sigma");
        // Keep the default extent proportional to an overridden sigma.
        if (!p.contains("extent")) {
            out.extent = def.extent * out.sigma / def.sigma;
        }
    }
    if (p.contains("n_points")) {
        out.n_points = get_count(p.at("n_points"), field + ".n_points");
    }
    if (p.contains("extent")) {
        out.extent = get_number(p.at("extent"), field + ".extent");
    }
    return out;
}

auto get_string(const json &j, const std::string &field) -> std::string {
    if (!j.is_string()) {
        throw field_error(field, "expected a string");
    }
    return j.get<std::string>();
}

// ---- canonical text -------------------------------------------------------

void emit(const json &j, std::string &out, int depth) {
    const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
    switch (j.type()) {
    case json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) {
                out += ",\n";
            }
            first = false;
            out += pad + json(it.key()).dump() + ": ";
            emit(it.value(), out, depth + 1);
        }
        out += "\n" + close_pad + "}";
        return;
    }
    case json::value_t::array: {
        const bool scalars = std::all_of(j.begin(), j.end(), [](const json &e) {
            return e.is_primitive();
        });
        if (j.empty()) {
            out += "[]";
            return;
        }
        if (scalars) {
            out += "[";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i > 0) {
                    out += ", ";
                }
                emit(j[i], out, depth + 1);
            }
            out += "]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i > 0) {
                out += ",\n";
            }
            out += pad;
            emit(j[i], out, depth + 1);
        }
        out += "\n" + close_pad + "]";
        return;
    }
    case json::value_t::number_float:
        out += format_double(j.get<double>());
        return;
    default:
        out += j.dump();
        return;
    }
}

void flatten(const json &j, const std::string &prefix,
             std::vector<std::pair<std::string, std::string>> &rows) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(),
                    rows);
        }
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
        }
    } else if (j.is_number_float()) {
        rows.emplace_back(prefix, format_double(j.get<double>()));
    } else if (j.is_string()) {
        rows.emplace_back(prefix, j.get<std::string>());
    } else {
        rows.emplace_back(prefix, j.dump());
    }
}

// ---- run modes ------------------------------------------------------------

auto report_to_json(const WeakValueReport &r) -> json {
    json out;
    out["weak_value"] = complex_to_json(r.weak_value);
    out["re_formula"] = r.re_formula;
    out["im_formula"] = r.im_formula;
    out["overlap"] = complex_to_json(r.overlap);
    out["postselect_prob"] = r.postselect_prob;
    out["expectation_A"] = r.expectation_a;
    out["eigenvalue_min"] = r.eigenvalue_min;
    out["eigenvalue_max"] = r.eigenvalue_max;
    out["anomalous"] = r.anomalous();
    out["commutator_norms"] = {
        {"A_F", r.commutator_norms.a_f},
        {"F_rhoI", r.commutator_norms.f_rho},
        {"A_rhoI", r.commutator_norms.a_rho},
        {"A_F_rhoI", r.commutator_norms.a_f_rho},
    };
    return out;
}

auto separability_to_json(const SeparabilityReport &r) -> json {
    json out;
    out["bipartition"] = r.bipartition;
    out["tolerance"] = r.tolerance;
    if (!r.singular_values.empty()) {
        out["singular_values"] = r.singular_values;
    }
    if (r.is_product) {
        out["is_product"] = *r.is_product;
    }
    if (r.correlation_gap) {
        out["correlation_gap"] = *r.correlation_gap;
        out["exceeds_threshold"] = *r.correlation_gap > r.tolerance;
    }
    return out;
}

auto summary_to_json(const RunSummary &s) -> json {
    json out;
    out["n_total"] = s.n_total;
    out["n_selected"] = s.n_selected;
    out["mean_all_AF"] = s.mean_all_af;
    out["mean_F"] = s.mean_f;
    out["mean_value_F"] = s.mean_value_f;
    out["mean_selected_A"] = s.mean_selected_a;
    out["mean_selected_AF"] = s.mean_selected_af;
    out["boost"] = s.boost;
    out["estimate"] = s.estimate;
    out["std_error"] = s.std_error;
    out["seed"] = s.seed;
    out["mode"] = s.mode;
    out["readout"] = s.readout;
    return out;
}

auto target_of(const Scenario &s, const WeakValueReport &r) -> double {
    return s.run.readout == Readout::Position ? r.re_formula : r.im_formula;
}

struct ExactEstimate {
    json doc;
    double estimate = 0.0;
};

auto exact_moments(const Scenario &s) -> ExactEstimate {
    const auto state = final_state(s);
    const Operator fhat = projector(s.f_vector);
    const double exp_a = expectation(s.a_matrix, s.i_vector).real();
    const double exp_f = expectation(fhat, s.i_vector).real();
    const double exp_af =
        expectation(anticommutator(fhat, s.a_matrix), s.i_vector).real();

    json out;
    out["mean_x_A"] = mean_pointer(state, 0);
    out["mean_x_F"] = mean_pointer(state, 1);
    out["correlation_AF"] = position_correlation(state);
    out["correlation_gap"] = *correlation_witness(state).correlation_gap;
    out["mean_p_A"] = mean_pointer_momentum(state, 0);
    out["norm"] = state.norm_squared();
    out["predicted"] = {
        {"mean_x_A", s.ga_ta * exp_a},
        {"mean_x_F", s.gf_tf * exp_f},
        {"correlation_AF", 0.5 * s.ga_ta * s.gf_tf * exp_af},
    };

    const auto params = EstimatorParams::from(s);
    const Density2D density = s.run.readout == Readout::Position
                                  ? device_density(state)
                                  : device_momentum_density(state);
    const auto post = exact_postselection(density, s.run.threshold);
    out["postselect_prob"] = post.selected_prob;
    out["postselected_mean_A"] = post.mean_selected_first;
    const double estimate = params.prefactor() * post.mean_selected_first;
    out["estimate"] = estimate;
    return {std::move(out), estimate};
}

void dump_records_csv(const std::string &path,
                      const std::vector<MeasurementRecord> &records) {
    std::string text = "index,value_A,value_F,selected\n";
    text.reserve(records.size() * 56);
    for (std::size_t k = 0; k < records.size(); ++k) {
        text += std::to_string(k);
        text += ',';
        text += format_double(records[k].value_a);
        text += ',';
        text += format_double(records[k].value_f);
        text += records[k].selected ? ",1\n" : ",0\n";
    }
    write_atomic(path, text);
}

auto sample(const Scenario &s, unsigned threads)
    -> std::vector<MeasurementRecord> {
    return s.run.mode == RunMode::SampleIdeal
               ? sample_ideal(s, s.run.samples, s.run.seed, threads)
               : sample_records(s, s.run.samples, s.run.seed, threads);
}

auto parse_values(const std::string &csv) -> std::vector<double> {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != item.size()) {
            throw ValidationError("bad sweep value '" + item + "'", "values");
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw ValidationError("no sweep values given", "values");
    }
    return out;
}

} // namespace

// ---- presets --------------------------------------------------------------

auto preset_names() -> std::vector<std::string> {
    std::vector<std::string> out;
    for (const auto &p : kPresets) {
        out.emplace_back(p.name);
    }
    return out;
}

auto preset_description(const std::string &name) -> std::string {
    for (const auto &p : kPresets) {
        if (name == p.name) {
            return p.description;
        }
    }
    throw ValidationError("unknown preset '" + name + "'", "preset");
}

auto preset(const std::string &name) -> Scenario {
    if (name == "qubit-theta30") {
        Scenario s = qubit_base(name);
        s.a_matrix = HermitianOperator(pauli::z());
        apply_theta(s, 30.0);
        return s;
    }
    if (name == "imaginary-sigma-x") {
        Scenario s = qubit_base(name);
        s.a_matrix = HermitianOperator(pauli::x());
        s.i_vector = Ket{1.0, 0.0};
        s.f_vector = Ket{cplx(1.0 / std::numbers::sqrt2, 0.0),
                         cplx(0.0, 1.0 / std::numbers::sqrt2)};
        s.run.readout = Readout::Momentum;
        return s;
    }
    if (name == "identity-coupling") {
        Scenario s = qubit_base(name);
        s.a_matrix = HermitianOperator(Operator::identity(2));
        apply_theta(s, 30.0);
        s.run.mode = RunMode::Diagnostics;
        return s;
    }
    throw ValidationError("unknown preset '" + name + "'", "preset");
}

// ---- scenario I/O ---------------------------------------------------------

auto parse_scenario(const json &doc) -> Scenario {
    if (!doc.is_object()) {
        throw ValidationError("scenario must be a JSON object");
    }
    Scenario s;
    s.name = doc.contains("name") ? get_string(doc.at("name"), "name") : "";
    if (!doc.contains("system_dim")) {
        throw field_error("system_dim", "missing");
    }
    s.system_dim = get_count(doc.at("system_dim"), "system_dim");
    if (s.system_dim == 0) {
        throw field_error("system_dim", "must be positive");
    }
    if (!doc.contains("A_matrix")) {
        throw field_error("A_matrix", "missing");
    }
    Operator a = get_matrix(doc.at("A_matrix"), "A_matrix", s.system_dim);
    if (a.hermiticity_defect() > 1e-12) {
        throw NotHermitianError("matrix is not Hermitian",
                                "A_matrix");
    }
    s.a_matrix = HermitianOperator(std::move(a), 1e-12);

    if (doc.contains("theta_deg")) {
        if (s.system_dim != 2) {
            throw field_error("theta_deg", "requires system_dim = 2");
        }
        apply_theta(s, get_number(doc.at("theta_deg"), "theta_deg"));
    } else {
        for (const char *f : {"I_vector", "F_vector"}) {
            if (!doc.contains(f)) {
                throw field_error(f, "missing");
            }
        }
        s.i_vector = get_vector(doc.at("I_vector"), "I_vector", s.system_dim);
        s.f_vector = get_vector(doc.at("F_vector"), "F_vector", s.system_dim);
    }

    if (!doc.contains("gA_tA")) {
        throw field_error("gA_tA", "missing");
    }
    s.ga_ta = get_number(doc.at("gA_tA"), "gA_tA");
    s.gf_tf = doc.contains("gF_tF") ? get_number(doc.at("gF_tF"), "gF_tF") : 1.0;
    s.hbar = doc.contains("hbar") ? get_number(doc.at("hbar"), "hbar") : 1.0;
    s.pointer_a =
        parse_pointer(doc, "pointer_A", default_pointer_a(kDefaultSigmaA));
    s.pointer_f = parse_pointer(doc, "pointer_F",
                                default_pointer_f(kDefaultSigmaF, s.gf_tf));

    s.run.mode = RunMode::ClosedForm;
    s.run.readout = Readout::Position;
    s.run.samples = kDefaultSamples;
    s.run.seed = 0;
    s.run.threshold = 0.5 * s.gf_tf;
    if (doc.contains("run")) {
        const json &r = doc.at("run");
        if (!r.is_object()) {
            throw field_error("run", "expected an object");
        }
        if (r.contains("mode")) {
            s.run.mode = parse_run_mode(get_string(r.at("mode"), "run.mode"));
        }
        if (r.contains("readout")) {
            s.run.readout =
                parse_readout(get_string(r.at("readout"), "run.readout"));
        }
        if (r.contains("samples")) {
            s.run.samples = get_count(r.at("samples"), "run.samples");
        }
        if (r.contains("seed")) {
            s.run.seed = get_count(r.at("seed"), "run.seed");
        }
        if (r.contains("threshold")) {
            s.run.threshold = get_number(r.at("threshold"), "run.threshold");
        }
    }
    validate(s);
    return s;
}

auto load_scenario(const std::string &path) -> Scenario {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open scenario file '" + path + "'",
                              "config");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error &e) {
        throw ValidationError(std::string("JSON parse error: ") + e.what(),
                              "config");
    }
    return parse_scenario(doc);
}

auto scenario_to_json(const Scenario &s) -> json {
    json doc;
    if (!s.name.empty()) {
        doc["name"] = s.name;
    }
    doc["system_dim"] = s.system_dim;
    json a = json::array();
    for (std::size_t r = 0; r < s.system_dim; ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < s.system_dim; ++c) {
            row.push_back(complex_to_json(s.a_matrix.matrix()(r, c)));
        }
        a.push_back(row);
    }
    doc["A_matrix"] = a;
    json iv = json::array();
    json fv = json::array();
    for (std::size_t k = 0; k < s.system_dim; ++k) {
        iv.push_back(complex_to_json(s.i_vector[k]));
        fv.push_back(complex_to_json(s.f_vector[k]));
    }
    doc["I_vector"] = iv;
    doc["F_vector"] = fv;
    doc["gA_tA"] = s.ga_ta;
    doc["gF_tF"] = s.gf_tf;
    doc["hbar"] = s.hbar;
    doc["pointer_A"] = {{"sigma", s.pointer_a.sigma},
                        {"n_points", s.pointer_a.n_points},
                        {"extent", s.pointer_a.extent}};
    doc["pointer_F"] = {{"sigma", s.pointer_f.sigma},
                        {"n_points", s.pointer_f.n_points},
                        {"extent", s.pointer_f.extent}};
    doc["run"] = {{"mode", to_string(s.run.mode)},
                  {"readout", to_string(s.run.readout)},
                  {"samples", s.run.samples},
                  {"seed", s.run.seed},
                  {"threshold", s.run.threshold}};
    return doc;
}

// ---- dispatch -------------------------------------------------------------

auto run(const Scenario &s, const RunOptions &opts) -> json {
    json out;
    out["scenario"] = s.name;
    out["mode"] = to_string(s.run.mode);
    out["readout"] = to_string(s.run.readout);
    const auto report = commutation_report(s.a_matrix, s.i_vector, s.f_vector);

    switch (s.run.mode) {
    case RunMode::ClosedForm:
        out.update(report_to_json(report));
        break;
    case RunMode::ExactMoments: {
        auto exact = exact_moments(s);
        out.update(exact.doc);
        out["re_formula"] = report.re_formula;
        out["im_formula"] = report.im_formula;
        out["abs_error"] = std::abs(exact.estimate - target_of(s, report));
        break;
    }
    case RunMode::SamplePointer:
    case RunMode::SampleIdeal: {
        const auto records = sample(s, opts.threads);
        if (opts.dump_records) {
            dump_records_csv(*opts.dump_records, records);
        }
        const auto summary = summarize(records, s);
        out.update(summary_to_json(summary));
        out["re_formula"] = report.re_formula;
        out["im_formula"] = report.im_formula;
        out["abs_error"] = std::abs(summary.estimate - target_of(s, report));
        break;
    }
    case RunMode::Diagnostics: {
        out["report"] = report_to_json(report);
        const auto after_a = state_after_a(s);
        out["product_checks"] = json::array(
            {separability_to_json(
                 product_check(after_a, Bipartition::SystemVsDevices)),
             separability_to_json(
                 product_check(after_a, Bipartition::DeviceAVsRest))});
        out["correlation_witness"] =
            separability_to_json(correlation_witness(final_state(s)));
        break;
    }
    }
    return out;
}

auto sweep(const Scenario &base, const std::string &param,
           const std::vector<double> &values, unsigned threads)
    -> std::vector<SweepRow> {
    if (param != "gA_tA" && param != "theta" && param != "sigma_F") {
        throw ValidationError("unknown sweep parameter '" + param +
                                  "' (expected gA_tA, theta or sigma_F)",
                              "param");
    }
    if (param == "theta" && !base.theta_deg) {
        throw ValidationError("theta sweeps need a theta-parametrized scenario",
                              "param");
    }
    std::vector<SweepRow> rows;
    for (double v : values) {
        Scenario s = base;
        if (param == "gA_tA") {
            s.ga_ta = v;
        } else if (param == "theta") {
            apply_theta(s, v);
        } else {
            s.pointer_f.sigma = v;
        }
        validate(s);

        const auto report =
            commutation_report(s.a_matrix, s.i_vector, s.f_vector);
        SweepRow row;
        row.param = param;
        row.value = v;
        row.re_formula = report.re_formula;
        row.im_formula = report.im_formula;
        switch (s.run.mode) {
        case RunMode::SamplePointer:
        case RunMode::SampleIdeal: {
            const auto summary = summarize(sample(s, threads), s);
            row.estimate = summary.estimate;
            row.std_error = summary.std_error;
            break;
        }
        case RunMode::ExactMoments:
            row.estimate = exact_moments(s).estimate;
            break;
        case RunMode::ClosedForm:
        case RunMode::Diagnostics:
            row.estimate = target_of(s, report);
            break;
        }
        row.abs_error = std::abs(row.estimate - target_of(s, report));
        rows.push_back(row);
    }
    return rows;
}

auto sweep_csv(const std::vector<SweepRow> &rows) -> std::string {
    std::string out =
        "param,value,estimate,std_error,re_formula,im_formula,abs_error\n";
    for (const auto &r : rows) {
        out += r.param;
        for (double v : {r.value, r.estimate, r.std_error, r.re_formula,
                         r.im_formula, r.abs_error}) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

// ---- text output ----------------------------------------------------------

auto format_double(double v) -> std::string {
    if (!std::isfinite(v)) {
        return "null";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

auto to_json_text(const json &doc) -> std::string {
    std::string out;
    emit(doc, out, 0);
    out += '\n';
    return out;
}

auto to_csv_text(const json &doc) -> std::string {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(doc, "", rows);
    std::string out = "key,value\n";
    for (const auto &[k, v] : rows) {
        out += k + "," + v + "\n";
    }
    return out;
}

void write_atomic(const std::string &path, const std::string &content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw Error("cannot open '" + tmp + "' for writing");
        }
        f << content;
        f.flush();
        if (!f) {
            throw Error("failed writing '" + tmp + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error("cannot move output into place at '" + path + "'");
    }
}

// ---- entry point ----------------------------------------------------------

namespace {

struct Source {
    std::string config;
    std::string preset;
    std::optional<std::uint64_t> seed;
    std::string mode;
    std::string readout;
};

void add_source_options(CLI::App *cmd, Source &src) {
    auto *cfg = cmd->add_option("--config", src.config, "Scenario JSON file");
    auto *pre = cmd->add_option("--preset", src.preset, "Built-in scenario");
    cfg->excludes(pre);
    cmd->add_option("--seed", src.seed,
                    "Seed override (beats WEAKMEAS_SEED and the file)");
    cmd->add_option("--mode", src.mode, "Run-mode override");
    cmd->add_option("--readout", src.readout, "Readout override");
}

auto resolve(const Source &src) -> Scenario {
    if (src.config.empty() == src.preset.empty()) {
        throw ValidationError("exactly one of --config or --preset is required",
                              "config");
    }
    Scenario s = src.config.empty() ? preset(src.preset)
                                    : load_scenario(src.config);
    if (const char *env = std::getenv("WEAKMEAS_SEED"); env != nullptr) {
        try {
            std::size_t used = 0;
            s.run.seed = std::stoull(env, &used);
            if (used != std::string(env).size()) {
                throw std::invalid_argument(env);
            }
        } catch (const std::exception &) {
            throw ValidationError("WEAKMEAS_SEED is not an unsigned integer",
                                  "WEAKMEAS_SEED");
        }
    }
    if (src.seed) {
        s.run.seed = *src.seed;
    }
    if (!src.mode.empty()) {
        s.run.mode = parse_run_mode(src.mode);
    }
    if (!src.readout.empty()) {
        s.run.readout = parse_readout(src.readout);
    }
    validate(s);
    return s;
}

void emit_output(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        write_atomic(path, text);
    }
}

} // namespace

auto main(const std::vector<std::string> &args) -> int {
    CLI::App app{"weakmeas: weak measurements with post-selection", "weakmeas"};
    app.require_subcommand(1);

    Source run_src;
    std::string format = "json";
    std::string out_path;
    std::string dump_path;
    unsigned threads = 1;
    auto *run_cmd = app.add_subcommand("run", "Run one scenario");
    add_source_options(run_cmd, run_src);
    run_cmd->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    run_cmd->add_option("--out", out_path, "Output file (default stdout)");
    run_cmd->add_option("--dump-records", dump_path,
                        "CSV dump of sampled records");
    run_cmd->add_option("--threads", threads, "Sampling threads")
        ->check(CLI::PositiveNumber);

    Source sweep_src;
    std::string param;
    std::string values;
    std::string sweep_out;
    unsigned sweep_threads = 1;
    auto *sweep_cmd = app.add_subcommand("sweep", "Sweep one parameter");
    add_source_options(sweep_cmd, sweep_src);
    sweep_cmd->add_option("--param", param, "gA_tA, theta or sigma_F")
        ->required();
    sweep_cmd->add_option("--values", values, "Comma-separated values")
        ->required();
    sweep_cmd->add_option("--out", sweep_out, "Output CSV (default stdout)");
    sweep_cmd->add_option("--threads", sweep_threads, "Sampling threads")
        ->check(CLI::PositiveNumber);

    std::string show;
    auto *presets_cmd = app.add_subcommand("presets", "List built-in scenarios");
    presets_cmd->add_option("--show", show, "Print one preset as scenario JSON");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp &e) {
        std::cout << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitValidation;
    }

    Scenario scenario;
    try {
        if (*presets_cmd) {
            if (show.empty()) {
                for (const auto &name : preset_names()) {
                    std::cout << name << "\t" << preset_description(name) << "\n";
                }
            } else {
                std::cout << to_json_text(scenario_to_json(preset(show)));
            }
            return kExitOk;
        }
        scenario = resolve(*run_cmd ? run_src : sweep_src);
    } catch (const Error &e) {
        std::cerr << "error[" << e.code() << "]"
                  << (e.field().empty() ? "" : " " + e.field()) << ": "
                  << e.what() << "\n";
        return kExitValidation;
    }

    try {
        if (*run_cmd) {
            RunOptions opts;
            opts.threads = threads;
            if (!dump_path.empty()) {
                opts.dump_records = dump_path;
            }
            const json doc = run(scenario, opts);
            emit_output(out_path,
                        format == "csv" ? to_csv_text(doc) : to_json_text(doc));
        } else {
            std::vector<double> vals;
            try {
                vals = parse_values(values);
            } catch (const Error &e) {
                std::cerr << "usage error: " << e.what() << "\n";
                return kExitValidation;
            }
            std::vector<SweepRow> rows;
            try {
                rows = sweep(scenario, param, vals, sweep_threads);
            } catch (const ValidationError &e) {
                std::cerr << "usage error: " << e.what() << "\n";
                return kExitValidation;
            } catch (const GridExtentError &e) {
                std::cerr << "error[" << e.code() << "]: " << e.what() << "\n";
                return kExitValidation;
            }
            emit_output(sweep_out, sweep_csv(rows));
        }
    } catch (const std::exception &e) {
        const auto *err = dynamic_cast<const Error *>(&e);
        std::cerr << "error[" << (err != nullptr ? err->code() : "runtime")
                  << "]: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

} // namespace weakmeas::cli
