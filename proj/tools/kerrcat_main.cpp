// Batch CLI: one subcommand per figure/table concept. Emits figure-ready CSV
// or JSON; every JSON record carries the effective configuration so runs are
// reproducible. Exit codes: 0 ok, 2 validation error, 3 per-point failures
// (sweep still written), 4 I/O error.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>

#include "kerrcat/io.hpp"
#include "kerrcat/kramers.hpp"
#include "kerrcat/langevin.hpp"
#include "kerrcat/liouvillian.hpp"
#include "kerrcat/semiclassical.hpp"
#include "kerrcat/sweep.hpp"
#include "kerrcat/wigner.hpp"

using namespace kerrcat;

namespace {

struct CommonOpts {
    std::string config_path;
    double G = 6.0, Delta = 0.0, eta = 1.0, U = 0.0;
    bool g_set = false, d_set = false, e_set = false, u_set = false;
    int N = 0;
    std::uint64_t seed = 1;
    double dt = 1e-3;
    std::string out = "-";
    std::string format = "csv";
    bool no_timestamp = false;
    int workers = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "key=value config file");
    cmd->add_option("-G,--pump", o.G, "two-photon pump rate G")->each([&](std::string) { o.g_set = true; });
    cmd->add_option("-D,--delta", o.Delta, "detuning Delta")->each([&](std::string) { o.d_set = true; });
    cmd->add_option("-e,--eta", o.eta, "two-photon dissipation eta")->each([&](std::string) { o.e_set = true; });
    cmd->add_option("-U,--kerr", o.U, "Kerr nonlinearity U")->each([&](std::string) { o.u_set = true; });
    cmd->add_option("-N,--truncation", o.N, "Fock truncation override (0 = adaptive)");
    cmd->add_option("--seed", o.seed, "random seed");
    cmd->add_option("--dt", o.dt, "Langevin time step");
    cmd->add_option("-o,--out", o.out, "output path ('-' = stdout)");
    cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--no-timestamp", o.no_timestamp, "omit the timestamp from JSON metadata");
    cmd->add_option("--workers", o.workers, "worker threads (0 = hardware)");
}

// precedence: CLI flag > config file > built-in default
void merge_config(CommonOpts& o) {
    if (o.config_path.empty()) return;
    const Config cfg = parse_config_file(o.config_path);
    if (!o.g_set) o.G = cfg.get_double("G", o.G);
    if (!o.d_set) o.Delta = cfg.get_double("Delta", o.Delta);
    if (!o.e_set) o.eta = cfg.get_double("eta", o.eta);
    if (!o.u_set) o.U = cfg.get_double("U", o.U);
    if (o.N == 0) o.N = cfg.get_int("N", 0);
    o.seed = cfg.get_u64("seed", o.seed);
    o.dt = cfg.get_double("dt", o.dt);
}

ModelParams params_of(const CommonOpts& o) { return ModelParams{o.G, o.Delta, o.eta, o.U}; }

std::map<std::string, std::string> effective_config(const CommonOpts& o) {
    std::map<std::string, std::string> m;
    m["G"] = format_double(o.G);
    m["Delta"] = format_double(o.Delta);
    m["eta"] = format_double(o.eta);
    m["U"] = format_double(o.U);
    if (o.N > 0) m["N"] = std::to_string(o.N);
    m["seed"] = std::to_string(o.seed);
    m["dt"] = format_double(o.dt);
    return m;
}

void emit(const CommonOpts& o, const std::string& content) {
    if (o.out == "-") {
        std::cout << content;
    } else {
        write_text_file(o.out, content);
    }
}

ordered_json rate_to_json(const RateEstimate& r) {
    ordered_json j;
    j["method"] = method_tag(r.method);
    j["gamma"] = r.value;
    j["log_gamma"] = r.log_value;
    j["valid"] = r.valid;
    if (!r.validity_note.empty()) j["note"] = r.validity_note;
    for (const auto& [k, v] : r.metadata) j[k] = v;
    return j;
}

RateMethod parse_method(const std::string& name) {
    if (name == "numeric") return RateMethod::NumericGap;
    if (name == "full") return RateMethod::KramersFull;
    if (name == "barrier") return RateMethod::KramersBarrier;
    if (name == "small") return RateMethod::SmallDetuning;
    if (name == "near-critical") return RateMethod::NearCritical;
    if (name == "langevin") return RateMethod::LangevinMc;
    throw ValidationError("unknown method: " + name);
}

std::vector<RateMethod> parse_methods(const std::string& csv) {
    std::vector<RateMethod> out;
    std::string cur;
    for (char c : csv + ",") {
        if (c == ',') {
            if (!cur.empty()) out.push_back(parse_method(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (out.empty()) throw ValidationError("empty method list");
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"switching rates of the two-photon driven Kerr resonator"};
    app.require_subcommand(1);

    CommonOpts o;

    // fixed-points ----------------------------------------------------------
    auto* cmd_fp = app.add_subcommand("fixed-points", "semiclassical fixed points and stability");
    add_common(cmd_fp, o);

    // phase-portrait ---------------------------------------------------------
    auto* cmd_pp = app.add_subcommand("phase-portrait", "drift field on a quadrature grid");
    double pp_extent = 0.0;
    std::size_t pp_nodes = 41;
    add_common(cmd_pp, o);
    cmd_pp->add_option("--extent", pp_extent, "half-width of the grid (0 = auto)");
    cmd_pp->add_option("--nodes", pp_nodes, "nodes per axis");

    // wigner ------------------------------------------------------------------
    auto* cmd_w = app.add_subcommand("wigner", "steady-state Wigner function on a grid");
    double w_extent = 0.0;
    std::size_t w_nodes = 161;
    add_common(cmd_w, o);
    cmd_w->add_option("--extent", w_extent, "half-width of the grid (0 = auto)");
    cmd_w->add_option("--nodes", w_nodes, "nodes per axis");

    // gap ----------------------------------------------------------------------
    auto* cmd_gap = app.add_subcommand("gap", "Liouvillian gap (numeric switching rate)");
    add_common(cmd_gap, o);

    // rate ----------------------------------------------------------------------
    auto* cmd_rate = app.add_subcommand("rate", "switching rate by one method");
    std::string rate_method = "barrier";
    int rate_ntraj = 2000;
    add_common(cmd_rate, o);
    cmd_rate->add_option("--method", rate_method,
                         "numeric|full|barrier|small|near-critical|langevin");
    cmd_rate->add_option("--trajectories", rate_ntraj, "Langevin trajectory count");

    // barrier --------------------------------------------------------------------
    auto* cmd_bar = app.add_subcommand("barrier", "potential-barrier height and prefactor");
    add_common(cmd_bar, o);

    // sweep ------------------------------------------------------------------------
    auto* cmd_sweep = app.add_subcommand("sweep", "rate methods over a parameter grid");
    std::string sweep_var = "Delta", sweep_methods = "barrier", sweep_spacing = "linear";
    double sweep_start = 0.1, sweep_stop = 5.9;
    int sweep_count = 30, sweep_ntraj = 2000;
    add_common(cmd_sweep, o);
    cmd_sweep->add_option("--variable", sweep_var, "Delta|theta|G|U_over_eta");
    cmd_sweep->add_option("--start", sweep_start, "grid start");
    cmd_sweep->add_option("--stop", sweep_stop, "grid stop");
    cmd_sweep->add_option("--count", sweep_count, "grid count");
    cmd_sweep->add_option("--spacing", sweep_spacing, "linear|log")
        ->check(CLI::IsMember({"linear", "log"}));
    cmd_sweep->add_option("--methods", sweep_methods, "comma list of methods");
    cmd_sweep->add_option("--trajectories", sweep_ntraj, "Langevin trajectory count");

    // optimal-detuning ----------------------------------------------------------------
    auto* cmd_opt = app.add_subcommand("optimal-detuning", "Delta minimizing the rate");
    std::string opt_method = "barrier";
    double opt_lo = 0.0, opt_hi = 0.0;
    int opt_coarse = 120;
    add_common(cmd_opt, o);
    cmd_opt->add_option("--method", opt_method, "numeric|barrier");
    cmd_opt->add_option("--delta-lo", opt_lo, "scan start (0 = 0.2 |kappa2|)");
    cmd_opt->add_option("--delta-hi", opt_hi, "scan stop (0 = 0.98 G)");
    cmd_opt->add_option("--coarse", opt_coarse, "coarse grid count");

    // critical-ratio --------------------------------------------------------------------
    auto* cmd_crit = app.add_subcommand("critical-ratio", "(U/eta)_c at fixed |kappa2|");
    std::string crit_method = "barrier";
    double crit_kappa2 = 1.0;
    int crit_coarse = 25;
    add_common(cmd_crit, o);
    cmd_crit->add_option("--method", crit_method, "numeric|barrier");
    cmd_crit->add_option("--kappa2", crit_kappa2, "fixed |kappa2|");
    cmd_crit->add_option("--coarse", crit_coarse, "coarse count of the Delta predicate scan");

    // langevin ------------------------------------------------------------------------------
    auto* cmd_lv = app.add_subcommand("langevin", "first-passage Monte-Carlo escape run");
    int lv_ntraj = 2000;
    double lv_max_time = 1000.0;
    add_common(cmd_lv, o);
    cmd_lv->add_option("--trajectories", lv_ntraj, "trajectory count");
    cmd_lv->add_option("--max-time", lv_max_time, "censoring cutoff");

    CLI11_PARSE(app, argc, argv);

    try {
        merge_config(o);
        const ModelParams params = params_of(o);
        const bool ts = !o.no_timestamp;

        if (cmd_fp->parsed()) {
            validate(params);
            ordered_json j;
            j["meta"] = metadata_block(params, o.seed, ts, effective_config(o));
            try {
                const FixedPointSet fp = fixed_points(params);
                j["n0"] = fp.n0;
                j["theta0"] = fp.theta0;
                j["alpha0"] = {fp.alpha0.real(), fp.alpha0.imag()};
                j["x0"] = std::sqrt(2.0) * fp.alpha0.real();
                j["p0"] = std::sqrt(2.0) * fp.alpha0.imag();
                j["saddle_eigs"] = {{fp.saddle_eigs.first.real(), fp.saddle_eigs.first.imag()},
                                    {fp.saddle_eigs.second.real(), fp.saddle_eigs.second.imag()}};
                j["nontrivial_eigs"] = {
                    {fp.nontrivial_eigs.first.real(), fp.nontrivial_eigs.first.imag()},
                    {fp.nontrivial_eigs.second.real(), fp.nontrivial_eigs.second.imag()}};
                j["nontrivial_class"] =
                    fp.nontrivial_class == NontrivialClass::Focus ? "focus" : "node";
            } catch (const NoBistability&) {
                j["n0"] = nullptr;
                j["note"] = "only the trivial fixed point exists";
            }
            emit(o, j.dump(2) + "\n");
            return 0;
        }

        if (cmd_pp->parsed()) {
            double ext = pp_extent;
            if (ext <= 0.0) ext = default_wigner_radius(params) - 2.0;
            const PhaseSpaceGrid g = vector_field_grid(
                params, {-ext, ext, -ext, ext, pp_nodes, pp_nodes});
            emit(o, to_csv(grid_to_table(g)));
            return 0;
        }

        if (cmd_w->parsed()) {
            double ext = w_extent;
            if (ext <= 0.0) ext = default_wigner_radius(params);
            const PhaseSpaceGrid g =
                wigner_grid(params, {-ext, ext, -ext, ext, w_nodes, w_nodes});
            if (o.format == "json") {
                ordered_json j;
                j["meta"] = metadata_block(params, o.seed, ts, effective_config(o));
                j["x_axis"] = g.x_axis;
                j["p_axis"] = g.p_axis;
                j["values"] = g.values;
                emit(o, j.dump(2) + "\n");
            } else {
                emit(o, to_csv(grid_to_table(g)));
            }
            return 0;
        }

        if (cmd_gap->parsed()) {
            const RateEstimate r =
                o.N > 0 ? liouvillian_gap(params, o.N) : liouvillian_gap(params);
            ordered_json j;
            j["meta"] = metadata_block(params, o.seed, ts, effective_config(o));
            j["rate"] = rate_to_json(r);
            emit(o, j.dump(2) + "\n");
            return 0;
        }

        if (cmd_rate->parsed()) {
            const RateMethod m = parse_method(rate_method);
            RateEstimate r;
            if (m == RateMethod::NumericGap) {
                r = o.N > 0 ? liouvillian_gap(params, o.N) : liouvillian_gap(params);
            } else if (m == RateMethod::KramersFull) {
                r = rate_full(params);
            } else if (m == RateMethod::KramersBarrier) {
                r = rate_barrier(params);
            } else if (m == RateMethod::SmallDetuning) {
                r = rate_small_detuning(params);
            } else if (m == RateMethod::NearCritical) {
                r = rate_near_critical(params);
            } else {
                LangevinConfig cfg;
                cfg.params = params;
                cfg.dt = o.dt;
                cfg.n_trajectories = rate_ntraj;
                cfg.seed = o.seed;
                cfg.n_workers = o.workers;
                const EscapeStatistics st = simulate_escape(cfg);
                r = RateEstimate::from_value(st.relaxation_rate, RateMethod::LangevinMc);
                r.metadata["stderr"] = st.stderr_rate;
                r.metadata["mean_fpt"] = st.mean_fpt;
            }
            ordered_json j;
            j["meta"] = metadata_block(params, o.seed, ts, effective_config(o));
            j["rate"] = rate_to_json(r);
            emit(o, j.dump(2) + "\n");
            return 0;
        }

        if (cmd_bar->parsed()) {
            KramersBreakdown kb;
            const RateEstimate r = rate_barrier(params, &kb);
            rate_full(params, &kb);
            ordered_json j;
            j["meta"] = metadata_block(params, o.seed, ts, effective_config(o));
            j["delta_phi"] = kb.delta_phi;
            j["prefactor_B"] = kb.prefactor_B;
            j["phi_saddle"] = kb.phi_saddle;
            j["phi_cl_parts"] = kb.phi_cl_parts;
            j["exponent"] = kb.exponent;
            j["lambda1_saddle"] = kb.lambda1_saddle;
            j["det_saddle"] = kb.det_saddle;
            j["det_cl"] = kb.det_cl;
            j["rate_barrier"] = r.value;
            j["rate_full"] = kb.rate_full;
            emit(o, j.dump(2) + "\n");
            return 0;
        }

        if (cmd_sweep->parsed()) {
            SweepSpec spec;
            if (sweep_var == "Delta") spec.variable = SweepVariable::Delta;
            else if (sweep_var == "theta") spec.variable = SweepVariable::Theta;
            else if (sweep_var == "G") spec.variable = SweepVariable::G;
            else if (sweep_var == "U_over_eta") spec.variable = SweepVariable::UOverEta;
            else throw ValidationError("unknown sweep variable: " + sweep_var);
            spec.grid = {sweep_start, sweep_stop, sweep_count, sweep_spacing == "log"};
            spec.fixed = params;
            spec.methods = parse_methods(sweep_methods);
            spec.N_override = o.N;
            spec.seed = o.seed;
            spec.dt = o.dt;
            spec.n_trajectories = sweep_ntraj;
            spec.n_workers = o.workers;
            const SweepTable table = run_sweep(spec);
            if (o.format == "json") {
                ordered_json j;
                j["meta"] = metadata_block(params, o.seed, ts, effective_config(o));
                j["sweep"] = sweep_to_json(table);
                emit(o, j.dump(2) + "\n");
            } else {
                emit(o, to_csv(sweep_to_table(table)));
            }
            return table.any_failures() ? 3 : 0;
        }

        if (cmd_opt->parsed()) {
            OptimalDetuningOptions od;
            od.delta_lo = opt_lo;
            od.delta_hi = opt_hi;
            od.coarse = opt_coarse;
            od.N_override = o.N;
            od.n_workers = o.workers;
            const OptimalDetuning res =
                find_optimal_detuning(params, parse_method(opt_method), od);
            ordered_json j;
            j["meta"] = metadata_block(params, o.seed, ts, effective_config(o));
            j["delta_opt"] = res.delta_opt;
            j["gamma_min"] = res.gamma_min;
            j["boundary"] = res.boundary;
            j["evaluations"] = res.evaluations;
            emit(o, j.dump(2) + "\n");
            return 0;
        }

        if (cmd_crit->parsed()) {
            CriticalRatioOptions co;
            co.coarse = crit_coarse;
            co.N_override = o.N;
            co.n_workers = o.workers;
            const CriticalRatio res =
                find_critical_ratio(o.G, crit_kappa2, parse_method(crit_method), co);
            ordered_json j;
            ModelParams meta_params = params_from_theta(o.G, 0.0, crit_kappa2, 0.5);
            j["meta"] = metadata_block(meta_params, o.seed, ts, effective_config(o));
            j["critical_ratio_numeric"] = res.numeric;
            j["critical_ratio_closed_form"] = res.closed_form;
            j["evaluations"] = res.evaluations;
            emit(o, j.dump(2) + "\n");
            return 0;
        }

        if (cmd_lv->parsed()) {
            LangevinConfig cfg;
            cfg.params = params;
            cfg.dt = o.dt;
            cfg.n_trajectories = lv_ntraj;
            cfg.max_time = lv_max_time;
            cfg.seed = o.seed;
            cfg.n_workers = o.workers;
            const EscapeStatistics st = simulate_escape(cfg);
            ordered_json j;
            j["meta"] = metadata_block(params, o.seed, ts, effective_config(o));
            j["params"] = params_to_json(params);
            j["dt"] = cfg.dt;
            j["n"] = cfg.n_trajectories;
            j["seed"] = cfg.seed;
            j["mean_fpt"] = st.mean_fpt;
            j["stderr"] = st.stderr_fpt;
            j["implied_rate"] = st.implied_rate;
            j["relaxation_rate"] = st.relaxation_rate;
            j["stderr_rate"] = st.stderr_rate;
            j["censored"] = st.n_censored;
            j["escaped"] = st.n_escaped;
            j["lower_bound"] = st.lower_bound;
            emit(o, j.dump(2) + "\n");
            return 0;
        }
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
