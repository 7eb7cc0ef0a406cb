// Copyright 2026 The qihe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qihe/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qihe/cycle.hpp"
#include "qihe/scenario.hpp"

namespace qihe {

namespace {

using Json = nlohmann::ordered_json;

struct Flags {
    std::string set;
    std::string state;
    std::string statistics;
    std::string mode;
    std::string engine;
    std::string format = "json";
    std::string output;
    std::string scenario;
    int n = 0;
    double c = 0.0;
    double beta = 1.0;
    int steps = 10000;
    std::uint64_t seed = 0;
    double tol = 0.0;
    bool clamp = false;
    int restarts = 32;
};

Json number(double x) {
    if (std::isinf(x)) return x > 0 ? Json("+inf") : Json("-inf");
    if (std::isnan(x)) return Json(nullptr);
    return Json(x);
}

std::string fixed(double x, int digits = 6) {
    if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
    if (std::abs(x) < 0.5 * std::pow(10.0, -digits)) x = 0.0;
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << x;
    return os.str();
}

// "ln k" when x (nats) is the logarithm of a small integer.
std::string ln_form(double x) {
    if (std::abs(x) < 1e-12) return "0";
    const double k = std::round(std::exp(x));
    if (k >= 2 && std::abs(std::log(k) - x) < 1e-9) return "ln " + std::to_string(static_cast<long>(k));
    return fixed(x);
}

void print_table(const Json& j, std::ostream& out, const std::string& indent = "") {
    for (const auto& [key, value] : j.items()) {
        if (value.is_object()) {
            out << indent << key << ":\n";
            print_table(value, out, indent + "  ");
        } else if (value.is_number_float()) {
            out << indent << key << ": " << fixed(value.get<double>(), 10) << "\n";
        } else {
            out << indent << key << ": " << value.dump() << "\n";
        }
    }
}

void emit(const Json& j, const Flags& f, std::ostream& out) {
    if (f.format == "table")
        print_table(j, out);
    else
        out << j.dump(2) << "\n";
}

bool given(const CLI::App& cmd, const std::string& name) {
    const CLI::Option* opt = cmd.get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
}

Scenario build_scenario(const CLI::App& cmd, const Flags& f) {
    Scenario sc = f.scenario.empty() ? Scenario{} : load_scenario_file(f.scenario);
    if (given(cmd, "--set")) sc.control_set = f.set;
    if (given(cmd, "--state")) {
        sc.state_name = f.state;
        sc.state_matrix.reset();
    }
    if (given(cmd, "--statistics")) sc.statistics = parse_statistics(f.statistics);
    if (given(cmd, "--mode")) sc.mode = parse_mode(f.mode);
    if (given(cmd, "--engine")) sc.engine = f.engine;
    if (given(cmd, "--n")) sc.n = f.n;
    if (given(cmd, "--c")) sc.polarization = f.c;
    if (given(cmd, "--beta")) sc.beta = f.beta;
    if (given(cmd, "--steps")) sc.steps = f.steps;
    if (given(cmd, "--seed")) sc.seed = f.seed;
    if (given(cmd, "--clamp")) sc.clamp = f.clamp;
    if (given(cmd, "--tol")) {
        sc.tol.hermiticity = f.tol;
        sc.tol.psd = f.tol;
        sc.tol.trace = f.tol;
    }
    return sc;
}

DensityMatrix resolve_state(const Scenario& sc, std::ostream& err) {
    std::vector<std::string> warnings;
    DensityMatrix rho = scenario_state(sc, warnings);
    for (const auto& w : warnings) err << "warning: " << w << "\n";
    return rho;
}

ControlSet resolve_set(const Scenario& sc) {
    if (!sc.control_set) throw ScenarioError("scenario: a control set is required (--set or \"control_set\")");
    return control_set_by_name(*sc.control_set, sc.statistics);
}

Json work_json(const WorkReport& r, const DensityMatrix& rho) {
    Json j;
    j["command"] = "work";
    j["control_set"] = r.control_set;
    j["statistics"] = to_string(rho.space().statistics());
    j["mode"] = to_string(r.mode);
    j["dim"] = rho.dim();
    j["input_entropy_bits"] = number(r.input_entropy);
    j["uncontrollable_entropy_bits"] = number(r.uncontrollable_entropy);
    j["work"] = number(r.work);
    j["optimal_work"] = number(r.optimal_work);
    j["is_optimal"] = r.is_optimal;
    j["numeric_estimate"] = r.numeric_estimate;
    Json diag = Json::object();
    for (const auto& [k, v] : r.diagnostics) diag[k] = number(v);
    j["diagnostics"] = diag;
    if (r.mode == WorkMode::feedback) {
        Json list = Json::array();
        for (double s : r.outcome_su) list.push_back(number(s));
        j["outcome_su_bits"] = list;
    }
    return j;
}

int cmd_work(const CLI::App& cmd, const Flags& f, std::ostream& out, std::ostream& err) {
    const Scenario sc = build_scenario(cmd, f);
    const ControlSet cs = resolve_set(sc);
    const DensityMatrix rho = resolve_state(sc, err);
    const ThermalContext ctx(sc.beta);
    WorkOptions opts;
    opts.tol = sc.tol;
    opts.oracle.seed = sc.seed;
    const WorkReport r =
        sc.mode == WorkMode::swap ? extractable_work(rho, cs, ctx, opts) : feedback_work(rho, cs, ctx, opts);
    emit(work_json(r, rho), f, out);
    return 0;
}

Json table_rows(const HilbertSpace& space, const std::vector<std::string>& labels) {
    const ControlSet f2 = ControlSet::collective_z(space);
    Json rows = Json::array();
    for (const auto& label : labels) {
        const auto r = extractable_work(named_state(label, space, 0), f2);
        Json row;
        row["input"] = label;
        row["S_u_bits"] = number(r.uncontrollable_entropy);
        row["W"] = number(r.work);
        row["S_u_ln_form"] = ln_form(r.uncontrollable_entropy * std::numbers::ln2);
        row["W_ln_form"] = ln_form(r.work);
        rows.push_back(row);
    }
    return rows;
}

int cmd_tables(const Flags& f, std::ostream& out) {
    Json j;
    j["command"] = "tables";
    j["table_I"] = {{"system", "distinguishable two-qubit, F2"},
                    {"rows", table_rows(HilbertSpace::distinguishable(2), {"|00>", "|01>", "|10>", "|11>"})}};
    j["table_II"] = {{"system", "bosonic two-qubit, F2"},
                     {"rows", table_rows(HilbertSpace::boson(2), {"|0>", "|1>", "|2>"})}};
    if (f.format != "table") {
        out << j.dump(2) << "\n";
        return 0;
    }
    for (const char* key : {"table_I", "table_II"}) {
        out << (std::string(key) == "table_I" ? "Table I" : "Table II") << "  ("
            << j[key]["system"].get<std::string>() << ")\n";
        out << std::left << std::setw(8) << "input" << std::setw(14) << "S_u [bits]" << std::setw(14) << "W [k_B T]"
            << std::setw(10) << "S_u" << "W\n";
        for (const auto& row : j[key]["rows"]) {
            out << std::left << std::setw(8) << row["input"].get<std::string>() << std::setw(14)
                << fixed(row["S_u_bits"].get<double>()) << std::setw(14) << fixed(row["W"].get<double>())
                << std::setw(10) << row["S_u_ln_form"].get<std::string>() << row["W_ln_form"].get<std::string>()
                << "\n";
        }
        out << "\n";
    }
    return 0;
}

void write_csv(const CycleTrace& t, std::ostream& out) {
    out << "t,stage,B,mu_z,R,E_battery\n";
    out << std::setprecision(17);
    for (const auto& s : t.samples)
        out << s.t << "," << to_string(s.stage) << "," << s.b << "," << s.mu_z << "," << s.r << "," << s.e_battery
            << "\n";
}

Json trace_json(const CycleTrace& t) {
    Json j;
    j["final_work"] = number(t.final_work);
    j["closed_form_work"] = number(t.closed_form_work);
    j["relative_deviation"] = number(t.relative_deviation);
    j["entropy_in_bits"] = number(t.entropy_in);
    j["stage_ii_increment"] = number(t.stage_ii_increment);
    j["clamp_error_bound"] = number(t.clamp_error_bound);
    j["samples"] = t.samples.size();
    return j;
}

DensityMatrix cycle_ancilla(const Scenario& sc, std::ostream& err) {
    if (sc.polarization) {
        const double c = *sc.polarization;
        if (c < 0.0 || c > 1.0) throw DomainError("cycle: polarization c must lie in [0, 1]");
        const std::array<double, 2> p{0.5 * (1 + c), 0.5 * (1 - c)};
        return DensityMatrix::diagonal(HilbertSpace::distinguishable(1), p);
    }
    Scenario one = sc;
    if (!one.n) one.n = 1;
    return resolve_state(one, err);
}

int cmd_cycle(const CLI::App& cmd, const Flags& f, std::ostream& out, std::ostream& err) {
    const Scenario sc = build_scenario(cmd, f);
    const ThermalContext ctx(sc.beta);
    EngineSpec spec;
    spec.ctx = ctx;
    spec.steps = sc.steps;
    spec.clamp = sc.clamp;
    spec.seed = sc.seed;
    spec.mode = sc.mode;

    Json j;
    j["command"] = "cycle";
    j["engine"] = sc.engine;
    const CycleTrace* trace = nullptr;
    CycleTrace swap_trace;
    FeedbackTrace fb;
    if (sc.engine == "1mqihe") {
        spec.ancilla_state = cycle_ancilla(sc, err);
        j["mode"] = to_string(sc.mode);
        j["steps"] = sc.steps;
        if (sc.mode == WorkMode::feedback) {
            fb = run_1mqihe_feedback(spec);
            trace = &fb.trace;
            j["polarization"] = number(std::abs(fb.trace.polarization));
            j["b_final"] = number(fb.trace.b_final);
            j["summary"] = trace_json(fb.trace);
            j["outcome"] = fb.outcome;
            j["probabilities"] = {number(fb.probabilities[0]), number(fb.probabilities[1])};
            j["branch_work"] = {number(fb.branch_work[0]), number(fb.branch_work[1])};
            j["expected_work"] = number(fb.expected_work);
        } else {
            swap_trace = run_1mqihe(spec);
            trace = &swap_trace;
            j["polarization"] = number(swap_trace.polarization);
            j["b_final"] = number(swap_trace.b_final);
            j["summary"] = trace_json(swap_trace);
        }
    } else if (sc.engine == "2mqihe") {
        Scenario two = sc;
        if (!two.n) two.n = 2;
        swap_trace = run_2mqihe(resolve_state(two, err), spec);
        trace = &swap_trace;
        j["steps"] = sc.steps;
        j["summary"] = trace_json(swap_trace);
    } else if (sc.engine == "usitir") {
        const ControlSet cs = resolve_set(sc);
        const DensityMatrix rho = resolve_state(sc, err);
        const auto st = usitir_stage_machine(rho, cs, ctx);
        j["control_set"] = cs.name();
        j["us_work"] = st.us_work ? number(*st.us_work) : Json(nullptr);
        j["it_penalty"] = number(st.it_penalty);
        j["ir_work"] = st.ir_work ? number(*st.ir_work) : Json(nullptr);
        j["reversible_yield"] = number(st.reversible_yield);
        j["total"] = number(st.total);
        j["extractable_work"] = number(st.report.work);
        emit(j, f, out);
        return 0;
    } else {
        throw ScenarioError("scenario: engine must be 1mqihe, 2mqihe or usitir (got '" + sc.engine + "')");
    }

    if (f.format == "csv") {
        if (f.output.empty()) {
            write_csv(*trace, out);
        } else {
            std::ofstream file(f.output);
            if (!file) throw ScenarioError("cycle: cannot write '" + f.output + "'");
            write_csv(*trace, file);
        }
        return 0;
    }
    if (!f.output.empty()) {
        std::ofstream file(f.output);
        if (!file) throw ScenarioError("cycle: cannot write '" + f.output + "'");
        write_csv(*trace, file);
    }
    emit(j, f, out);
    return 0;
}

int cmd_control(const CLI::App& cmd, const Flags& f, std::ostream& out, std::ostream& err) {
    Scenario sc = build_scenario(cmd, f);
    const ControlSet cs = resolve_set(sc);
    Json j;
    j["command"] = "control";
    j["control_set"] = cs.name();
    j["dim"] = cs.space().dim();
    j["lie_closure_dim"] = lie_closure_dim(cs);
    j["dmc"] = is_dmc(cs);
    if (!sc.state_name && !sc.state_matrix) {
        j["ct"] = nullptr;
        emit(j, f, out);
        return 0;
    }
    if (!sc.n) sc.n = cs.space().n_particles();
    const DensityMatrix rho = resolve_state(sc, err);
    if (rho.dim() != cs.space().dim())
        throw DimensionMismatchError("control: state dimension " + std::to_string(rho.dim()) +
                                     " differs from control set dimension " + std::to_string(cs.space().dim()));
    const ThermalContext ctx(sc.beta);
    Json ct;
    if (cs.kind() == ControlSetKind::c2) {
        const auto sol = ct_solve_c2(rho, ctx, sc.tol);
        ct["found"] = true;
        ct["method"] = "constructive";
        ct["spectral_residual"] = number(sol.spectral_residual);
        ct["coefficients"] = sol.coefficients;
    } else {
        CtSearchOptions opts;
        opts.seed = sc.seed;
        const auto res = ct_search_generic(cs, rho, ctx, opts, sc.tol);
        ct["found"] = res.solution.has_value();
        ct["method"] = "search";
        ct["spectral_residual"] = number(res.best_residual);
        if (res.solution) ct["coefficients"] = res.solution->coefficients;
    }
    j["ct"] = ct;
    emit(j, f, out);
    return 0;
}

int cmd_oracle(const CLI::App& cmd, const Flags& f, std::ostream& out, std::ostream& err) {
    const Scenario sc = build_scenario(cmd, f);
    const ControlSet cs = resolve_set(sc);
    const DensityMatrix rho = resolve_state(sc, err);
    OracleOptions opts;
    opts.seed = sc.seed;
    opts.restarts = f.restarts;
    const ThermalContext ctx(sc.beta);
    const auto est = brute_force_su(rho, cs, opts, ctx);
    Json j;
    j["command"] = "oracle";
    j["control_set"] = cs.name();
    j["bits"] = number(est.bits);
    j["converged"] = est.converged;
    j["evaluations"] = est.evaluations;
    j["best_restart"] = est.best_restart;
    if (cs.kind() != ControlSetKind::custom && cs.kind() != ControlSetKind::c2)
        j["closed_form_bits"] = number(extractable_work(rho, cs, ctx).uncontrollable_entropy);
    emit(j, f, out);
    return 0;
}

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--scenario", f.scenario, "Scenario JSON file (schema 1)");
    cmd->add_option("--beta", f.beta, "Inverse temperature")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", f.seed, "Random seed");
    cmd->add_option("--tol", f.tol, "Override hermiticity, PSD and trace tolerances")->check(CLI::PositiveNumber);
    cmd->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
    cmd->add_option("--statistics", f.statistics, "distinguishable | boson | fermion");
    cmd->add_option("--n", f.n, "Number of particles")->check(CLI::PositiveNumber);
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"qihe: work extraction in quantum information heat engines"};
    app.require_subcommand(1);
    Flags f;

    auto* work = app.add_subcommand("work", "Uncontrollable entropy and extractable work");
    add_common(work, f);
    work->add_option("--set", f.set, "Control set: L<N>, G<N>, F<N>, C2");
    work->add_option("--state", f.state, "Input state (named)");
    work->add_option("--mode", f.mode, "swap | feedback");

    auto* tables = app.add_subcommand("tables", "Two-qubit F2 tables for distinguishable and bosonic inputs");
    tables->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"json", "table"}));

    auto* cycle = app.add_subcommand("cycle", "Quasi-static engine cycle with battery ledger");
    add_common(cycle, f);
    cycle->add_option("--engine", f.engine, "1mqihe | 2mqihe | usitir");
    cycle->add_option("--c", f.c, "Ancilla polarization");
    cycle->add_option("--state", f.state, "Input state (named)");
    cycle->add_option("--set", f.set, "Control set (usitir)");
    cycle->add_option("--mode", f.mode, "swap | feedback");
    cycle->add_option("--steps", f.steps, "Discretization steps per stage")->check(CLI::Range(10, 100000000));
    cycle->add_flag("--clamp", f.clamp, "Clamp near-zero eigenvalues to 1e-6");
    cycle->add_option("--output", f.output, "CSV trace destination");

    auto* control = app.add_subcommand("control", "Lie closure, DMC verdict and CT solution");
    add_common(control, f);
    control->add_option("--set", f.set, "Control set");
    control->add_option("--state", f.state, "Input state (named)");

    auto* oracle = app.add_subcommand("oracle", "Brute-force uncontrollable entropy");
    add_common(oracle, f);
    oracle->add_option("--set", f.set, "Control set");
    oracle->add_option("--state", f.state, "Input state (named)");
    oracle->add_option("--restarts", f.restarts, "Multistart restarts")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (work->parsed()) return cmd_work(*work, f, out, err);
        if (tables->parsed()) return cmd_tables(f, out);
        if (cycle->parsed()) return cmd_cycle(*cycle, f, out, err);
        if (control->parsed()) return cmd_control(*control, f, out, err);
        if (oracle->parsed()) return cmd_oracle(*oracle, f, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}

} // namespace qihe
