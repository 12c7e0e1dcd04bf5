// reidlab command-line front end.
//
//   reidlab simulate    integrate a Reid system, write the trajectory CSV
//   reidlab verify      run the property suites, emit a JSON report
//   reidlab parametric  tabulate an exponential parametric solution
//   reidlab kepler      tabulate the hyperbolic radial oscillator
//
// Exit codes: 0 success, 1 verification failure, 2 configuration error,
// 3 numerical singularity (the message names the offending location).

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "reidlab/reidlab.hpp"

#include "csv.hpp"
#include "log.hpp"
#include "report.hpp"
#include "verify_suites.hpp"

namespace {

using nlohmann::json;
using namespace reidlab;

struct RunConfig {
    int m = 2;
    double alpha = 1.0;
    double wronskian = 1.0;
    json frequency = {{"kind", "constant"}, {"parameters", {1.0}}};
    double t0 = 0.0;
    double t1 = 10.0;
    numerics::ToleranceConfig tol;
    double a = 1.0;
    double b = 0.0;
    double qtilde0 = 1.0;
    double qtilde_dot0 = 0.0;
    std::string output = "csv";
    std::uint64_t seed = 42;

    json echo() const {
        return json{{"m", m},
                    {"alpha", alpha},
                    {"wronskian", wronskian},
                    {"frequency", frequency},
                    {"t0", t0},
                    {"t1", t1},
                    {"tol",
                     {{"rel_tol", tol.rel_tol},
                      {"abs_tol", tol.abs_tol},
                      {"max_steps", tol.max_steps}}},
                    {"ics",
                     {{"a", a},
                      {"b", b},
                      {"qtilde", qtilde0},
                      {"qtilde_t", qtilde_dot0}}},
                    {"output", output},
                    {"seed", seed}};
    }
};

linear::FrequencyModel parse_frequency(const json& desc) {
    if (!desc.is_object() || !desc.contains("kind"))
        throw ConfigError("frequency: expected {\"kind\": ...}");
    const std::string kind = desc.at("kind").get<std::string>();
    if (kind == "zero") return linear::FrequencyModel::zero();
    if (kind == "constant") {
        const auto params = desc.value("parameters", std::vector<double>{1.0});
        if (params.size() != 1)
            throw ConfigError("frequency: constant takes one parameter");
        return linear::FrequencyModel::constant(params[0]);
    }
    if (kind == "polynomial") {
        const auto params = desc.value("parameters", std::vector<double>{});
        return linear::FrequencyModel::polynomial(params);
    }
    if (kind == "tabulated") {
        const auto grid = desc.value("grid", std::vector<double>{});
        const auto values = desc.value("values", std::vector<double>{});
        return linear::FrequencyModel::tabulated(grid, values);
    }
    throw ConfigError("frequency: unknown kind '" + kind + "'");
}

void merge_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (j.contains("m")) cfg.m = j.at("m").get<int>();
    if (j.contains("alpha")) cfg.alpha = j.at("alpha").get<double>();
    if (j.contains("wronskian"))
        cfg.wronskian = j.at("wronskian").get<double>();
    if (j.contains("frequency")) cfg.frequency = j.at("frequency");
    if (j.contains("t0")) cfg.t0 = j.at("t0").get<double>();
    if (j.contains("t1")) cfg.t1 = j.at("t1").get<double>();
    if (j.contains("tol")) {
        const auto& tol = j.at("tol");
        if (tol.contains("rel_tol"))
            cfg.tol.rel_tol = tol.at("rel_tol").get<double>();
        if (tol.contains("abs_tol"))
            cfg.tol.abs_tol = tol.at("abs_tol").get<double>();
        if (tol.contains("max_steps"))
            cfg.tol.max_steps = tol.at("max_steps").get<std::size_t>();
    }
    if (j.contains("ics")) {
        const auto& ics = j.at("ics");
        if (ics.contains("a")) cfg.a = ics.at("a").get<double>();
        if (ics.contains("b")) cfg.b = ics.at("b").get<double>();
        if (ics.contains("qtilde")) cfg.qtilde0 = ics.at("qtilde").get<double>();
        if (ics.contains("qtilde_t"))
            cfg.qtilde_dot0 = ics.at("qtilde_t").get<double>();
    }
    if (j.contains("output")) cfg.output = j.at("output").get<std::string>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
}

// ---------------------------------------------------------------------------

int cmd_simulate(const RunConfig& cfg, const std::string& out_path) {
    const reid::ReidParams params{cfg.m, cfg.alpha};
    params.validate();
    cfg.tol.validate();
    if (!(cfg.t1 > cfg.t0)) throw ConfigError("simulate: t1 must exceed t0");
    if (cfg.output != "csv" && cfg.output != "json")
        throw ConfigError("simulate: output must be csv or json");
    const auto freq = parse_frequency(cfg.frequency);
    const reid::SuperpositionCoefficients coeffs{cfg.a, cfg.b};
    coeffs.validate();

    log::info("simulate: m=", cfg.m, " alpha=", cfg.alpha, " t in [", cfg.t0,
              ", ", cfg.t1, "]");
    const auto basis =
        linear::solve_basis(freq, cfg.t0, cfg.t1, cfg.tol, cfg.wronskian);
    const auto traj = reid::simulate_reid(
        freq, params, basis, coeffs, {cfg.qtilde0, cfg.qtilde_dot0}, cfg.t0,
        cfg.t1, cfg.tol);

    const double kappa = params.kappa(traj.wronskian);
    auto row_of = [&](std::size_t i) {
        const double q = traj.base(i, 0), q_t = traj.base(i, 1);
        const double qt = traj.aux(i, 0), qt_t = traj.aux(i, 1);
        // For m = 2 the phase channel is not integrated (it diverges at
        // zeros of q1); the reported Y is the identity q2 / (W q1).
        const double y = traj.has_phase()
                             ? traj.phase(i, 0)
                             : traj.basis(i, 2) /
                                   (traj.wronskian * traj.basis(i, 0));
        const double inv =
            (cfg.m == 2)
                ? invariant::el_invariant_m2(q, q_t, qt, qt_t, cfg.alpha)
                : invariant::detail::higher_physical_formula(
                      traj.basis(i, 0), traj.basis(i, 1), qt, qt_t, y, cfg.m,
                      kappa);
        return std::vector<double>{traj.t(i), q, q_t, qt, qt_t, y, inv};
    };

    const auto drift = invariant::drift_report(
        traj, cfg.m == 2 ? invariant::Formulation::m2_physical
                         : invariant::Formulation::higher_physical);

    report::Report rep;
    rep.command = "simulate";
    rep.config = cfg.echo();
    rep.seed = cfg.seed;
    rep.verdicts.push_back(report::Verdict{
        "simulate.invariant_rel_drift", drift.rel_drift < 1e-6,
        drift.rel_drift, 1e-6, "drift of the sampled invariant vs I(t0)"});

    if (cfg.output == "csv") {
        csv::Writer writer(out_path, "t,q,q_t,qtilde,qtilde_t,Y,I");
        for (std::size_t i = 0; i < traj.size(); ++i) writer.row(row_of(i));
        log::info("simulate: wrote ", traj.size(), " rows to ", out_path);
    } else {
        report::Table table;
        table.name = "trajectory";
        table.columns = {"t", "q", "q_t", "qtilde", "qtilde_t", "Y", "I"};
        for (std::size_t i = 0; i < traj.size(); ++i)
            table.rows.push_back(row_of(i));
        rep.tables.push_back(std::move(table));
        report::write_json(rep, out_path);
        log::info("simulate: wrote JSON report to ", out_path);
    }

    std::printf("invariant reference I(t0) = %.12g\n", drift.reference);
    std::printf("max |I - I(t0)| = %.3e   rel drift = %.3e over %zu samples\n",
                drift.max_abs_drift, drift.rel_drift, drift.samples.size());
    return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed,
               const std::string& out_path) {
    report::Report rep;
    rep.command = "verify";
    rep.seed = seed;
    rep.config = json{{"suite", suite}, {"seed", seed}};
    rep.verdicts = verify::run_suite(suite, seed);
    report::print_verdicts(rep);
    report::write_json(rep, out_path);
    const bool ok = rep.all_pass();
    std::printf("%zu properties, %s; report written to %s\n",
                rep.verdicts.size(), ok ? "all pass" : "FAILURES present",
                out_path.c_str());
    return ok ? 0 : 1;
}

int cmd_parametric(int m, double alpha, double wronskian, double invariant_i,
                   double q_lo, double q_hi, const std::string& branch,
                   double tau0, std::size_t n, const std::string& out_path) {
    const reid::ReidParams params{m, alpha};
    params.validate();
    const auto branch_enum = [&] {
        if (branch == "+") return emden_fowler::Branch::plus;
        if (branch == "-") return emden_fowler::Branch::minus;
        throw ConfigError("parametric: branch must be + or -");
    }();

    const auto sol = emden_fowler::parametric_solution(
        params, wronskian, invariant_i, {q_lo, q_hi}, branch_enum, tau0, n);

    csv::Writer writer(out_path, "Qtilde,Y,rtilde,check_r_eq_QsqrtY");
    for (std::size_t i = 0; i < sol.qtilde_grid.size(); ++i) {
        const double check =
            sol.rtilde_of_q[i] -
            sol.qtilde_grid[i] * std::sqrt(sol.y_of_q[i]);
        writer.row({sol.qtilde_grid[i], sol.y_of_q[i], sol.rtilde_of_q[i],
                    check});
    }

    const double residual = numerics::max_residual(
        emden_fowler::ef_residual(sol.ef_path(), params, wronskian));
    std::printf("Emden-Fowler residual (max over %zu points) = %.3e  [%s]\n",
                sol.qtilde_grid.size(), residual,
                residual < 1e-4 ? "PASS" : "FAIL");
    std::printf("table written to %s\n", out_path.c_str());
    return residual < 1e-4 ? 0 : 1;
}

int cmd_kepler(int m, double angular, double mass, double t0, double t1,
               std::size_t n, const std::string& out_path) {
    const auto kepler = mechanics::KeplerParams::integrable(mass, angular, m);
    if (!(t1 > t0)) throw ConfigError("kepler: t1 must exceed t0");
    if (n < 2) throw ConfigError("kepler: need at least two samples");

    csv::Writer writer(out_path, "t,R,R_dot,I,kinetic,nonlinear,potential");
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t =
            t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(n - 1);
        const auto [r, rdot] = mechanics::radial_solution_state(t, kepler);
        const double inv = mechanics::radial_invariant(r, rdot, kepler);
        const auto energy = mechanics::radial_energy(r, rdot, kepler);
        writer.row({t, r, rdot, inv, energy.kinetic, energy.nonlinear,
                    energy.potential});
        worst = std::max(worst, std::abs(inv));
    }
    std::printf("max |I| along the closed form = %.3e  [%s]\n", worst,
                worst < 1e-8 ? "PASS" : "FAIL");
    std::printf("table written to %s\n", out_path.c_str());
    return worst < 1e-8 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reid oscillator and Ermakov-Lewis invariant toolbox"};
    app.require_subcommand(1);

    // -- simulate ----------------------------------------------------------
    auto* sim = app.add_subcommand("simulate", "integrate a Reid system");
    std::string sim_config, sim_out = "trajectory.csv";
    RunConfig cfg;
    int f_m = cfg.m;
    double f_alpha = cfg.alpha, f_w = cfg.wronskian, f_t0 = cfg.t0,
           f_t1 = cfg.t1, f_rel = cfg.tol.rel_tol, f_abs = cfg.tol.abs_tol,
           f_a = cfg.a, f_b = cfg.b, f_q0 = cfg.qtilde0,
           f_qd0 = cfg.qtilde_dot0;
    std::size_t f_steps = cfg.tol.max_steps;
    std::string f_output = cfg.output, f_fkind, f_fparams;
    std::uint64_t f_seed = cfg.seed;
    sim->add_option("--config", sim_config, "JSON config file");
    auto* o_m = sim->add_option("--m", f_m, "nonlinearity order (>= 2)");
    auto* o_alpha = sim->add_option("--alpha", f_alpha, "coupling alpha != 0");
    auto* o_w = sim->add_option("--wronskian", f_w, "basis Wronskian");
    auto* o_t0 = sim->add_option("--t0", f_t0, "start time");
    auto* o_t1 = sim->add_option("--t1", f_t1, "end time");
    auto* o_rel = sim->add_option("--tol-rel", f_rel, "relative tolerance");
    auto* o_abs = sim->add_option("--tol-abs", f_abs, "absolute tolerance");
    auto* o_steps = sim->add_option("--max-steps", f_steps, "step limit");
    auto* o_a = sim->add_option("--a", f_a, "superposition coefficient a");
    auto* o_b = sim->add_option("--b", f_b, "superposition coefficient b");
    auto* o_q0 = sim->add_option("--qtilde0", f_q0, "qtilde(t0)");
    auto* o_qd0 = sim->add_option("--qtilde-dot0", f_qd0, "qtilde_t(t0)");
    auto* o_output = sim->add_option("--output", f_output, "csv | json");
    auto* o_fkind = sim->add_option("--frequency-kind", f_fkind,
                                    "zero | constant | polynomial");
    auto* o_fparams = sim->add_option("--frequency-params", f_fparams,
                                      "comma-separated coefficients");
    auto* o_seed = sim->add_option("--seed", f_seed, "run seed (echoed)");
    sim->add_option("--out", sim_out, "output path");

    // -- verify ------------------------------------------------------------
    auto* ver = app.add_subcommand("verify", "run the property suites");
    std::string ver_suite = "all", ver_out = "verify_report.json";
    std::uint64_t ver_seed = 42;
    ver->add_option("suite", ver_suite,
                    "superposition | invariants | ef_chain | abel | mechanics | all");
    ver->add_option("--seed", ver_seed, "seed for randomized properties");
    ver->add_option("--out", ver_out, "JSON report path");

    // -- parametric ----------------------------------------------------------
    auto* par = app.add_subcommand("parametric",
                                   "exponential parametric solution table");
    int par_m = 3;
    double par_alpha = 1.0, par_w = 1.0, par_i = 0.375 * std::cbrt(0.5),
           par_qlo = 1.0, par_qhi = 2.0, par_tau0 = 1.0;
    std::size_t par_n = 1001;
    std::string par_branch = "-", par_out = "parametric.csv";
    par->add_option("--m", par_m, "nonlinearity order");
    par->add_option("--alpha", par_alpha, "coupling");
    par->add_option("--wronskian", par_w, "Wronskian");
    par->add_option("--invariant", par_i, "invariant value I");
    par->add_option("--q-lo", par_qlo, "lower Qtilde bound");
    par->add_option("--q-hi", par_qhi, "upper Qtilde bound");
    par->add_option("--branch", par_branch, "+ or -");
    par->add_option("--tau0", par_tau0, "integration constant tau0 > 0");
    par->add_option("--n", par_n, "grid points");
    par->add_option("--out", par_out, "output path");

    // -- kepler --------------------------------------------------------------
    auto* kep = app.add_subcommand("kepler", "hyperbolic radial oscillator");
    int kep_m = 2;
    double kep_l = 1.0, kep_mass = 1.0, kep_t0 = -2.0, kep_t1 = 2.0;
    std::size_t kep_n = 401;
    std::string kep_out = "kepler.csv";
    kep->add_option("--m", kep_m, "nonlinearity order");
    kep->add_option("--l", kep_l, "angular-momentum-like constant");
    kep->add_option("--M", kep_mass, "mass M > 0");
    kep->add_option("--t0", kep_t0, "start time");
    kep->add_option("--t1", kep_t1, "end time");
    kep->add_option("--n", kep_n, "samples");
    kep->add_option("--out", kep_out, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // bad flags are configuration errors
    }

    try {
        if (sim->parsed()) {
            if (!sim_config.empty()) merge_config_file(cfg, sim_config);
            if (*o_m) cfg.m = f_m;
            if (*o_alpha) cfg.alpha = f_alpha;
            if (*o_w) cfg.wronskian = f_w;
            if (*o_t0) cfg.t0 = f_t0;
            if (*o_t1) cfg.t1 = f_t1;
            if (*o_rel) cfg.tol.rel_tol = f_rel;
            if (*o_abs) cfg.tol.abs_tol = f_abs;
            if (*o_steps) cfg.tol.max_steps = f_steps;
            if (*o_a) cfg.a = f_a;
            if (*o_b) cfg.b = f_b;
            if (*o_q0) cfg.qtilde0 = f_q0;
            if (*o_qd0) cfg.qtilde_dot0 = f_qd0;
            if (*o_output) cfg.output = f_output;
            if (*o_seed) cfg.seed = f_seed;
            if (*o_fkind) {
                json desc = {{"kind", f_fkind}};
                if (*o_fparams) {
                    std::vector<double> params;
                    std::stringstream ss(f_fparams);
                    std::string item;
                    while (std::getline(ss, item, ','))
                        params.push_back(std::stod(item));
                    desc["parameters"] = params;
                }
                cfg.frequency = desc;
            }
            return cmd_simulate(cfg, sim_out);
        }
        if (ver->parsed()) return cmd_verify(ver_suite, ver_seed, ver_out);
        if (par->parsed())
            return cmd_parametric(par_m, par_alpha, par_w, par_i, par_qlo,
                                  par_qhi, par_branch, par_tau0, par_n,
                                  par_out);
        if (kep->parsed())
            return cmd_kepler(kep_m, kep_l, kep_mass, kep_t0, kep_t1, kep_n,
                              kep_out);
    } catch (const ConfigError& e) {
        log::error(e.what());
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const SingularityError& e) {
        log::error(e.what());
        std::cerr << "numerical singularity: " << e.what() << "\n";
        return 3;
    } catch (const StepLimitExceeded& e) {
        std::cerr << "numerical singularity: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
