#include <doctest.h>

#include <cmath>

#include "kerrcat/io.hpp"
#include "kerrcat/kramers.hpp"
#include "kerrcat/sweep.hpp"

using namespace kerrcat;

TEST_CASE("grid points validation and spacing") {
    CHECK_THROWS_AS(grid_points({0.0, 1.0, 1, false}), ValidationError);
    CHECK_THROWS_AS(grid_points({2.0, 1.0, 5, false}), ValidationError);
    CHECK_THROWS_AS(grid_points({0.0, 1.0, 5, true}), ValidationError);
    const auto lin = grid_points({1.0, 3.0, 3, false});
    CHECK(lin[1] == doctest::Approx(2.0));
    const auto lg = grid_points({1.0, 100.0, 3, true});
    CHECK(lg[1] == doctest::Approx(10.0));
}

TEST_CASE("empty method list is rejected") {
    SweepSpec spec;
    spec.fixed = ModelParams{6.0, 0.0, 1.0, 0.0};
    spec.grid = {0.5, 2.0, 3, false};
    CHECK_THROWS_AS(run_sweep(spec), ValidationError);
}

TEST_CASE("Delta sweep with the analytic methods") {
    SweepSpec spec;
    spec.variable = SweepVariable::Delta;
    spec.grid = {1.0, 5.0, 9, false};
    spec.fixed = ModelParams{6.0, 0.0, 1.0, 0.0};
    spec.methods = {RateMethod::KramersBarrier, RateMethod::SmallDetuning};
    const SweepTable t = run_sweep(spec);

    REQUIRE(t.rows.size() == 9);
    CHECK(t.variable_name == "Delta");
    CHECK_FALSE(t.any_failures());
    // rows arrive in grid order and the barrier column is monotone here
    double prev_swept = 0.0, prev_rate = 0.0;
    for (const auto& row : t.rows) {
        CHECK(row.swept > prev_swept);
        REQUIRE(row.cells.size() == 2);
        REQUIRE(row.cells[0].rate.has_value());
        CHECK(row.cells[0].rate->value > prev_rate);
        prev_swept = row.swept;
        prev_rate = row.cells[0].rate->value;
    }
}

TEST_CASE("per-point failures land in status cells without aborting") {
    SweepSpec spec;
    spec.variable = SweepVariable::Delta;
    spec.grid = {5.0, 7.0, 3, false};  // the last point leaves |Delta| < G
    spec.fixed = ModelParams{6.0, 0.0, 1.0, 0.0};
    spec.methods = {RateMethod::KramersBarrier, RateMethod::SmallDetuning};
    const SweepTable t = run_sweep(spec);
    REQUIRE(t.rows.size() == 3);
    CHECK(t.rows[0].cells[0].status == "ok");
    CHECK(t.rows[2].cells[0].status == "no_bistability");
    CHECK_FALSE(t.rows[2].cells[0].rate.has_value());
    CHECK(t.rows[2].cells[1].status == "ok");  // the small-detuning law still evaluates
    CHECK(t.any_failures());
}

TEST_CASE("theta sweep holds |kappa2| fixed") {
    SweepSpec spec;
    spec.variable = SweepVariable::Theta;
    spec.grid = {0.0, 1.4, 5, false};
    spec.fixed = ModelParams{6.0, 2.0, 1.0, 0.0};
    spec.methods = {RateMethod::KramersBarrier};
    const SweepTable t = run_sweep(spec);
    for (const auto& row : t.rows) {
        CHECK(row.params.kappa2_modulus() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(row.params.kappa2_phase() == doctest::Approx(row.swept).epsilon(1e-12));
    }
}

TEST_CASE("sweeps are deterministic, including Monte-Carlo cells") {
    SweepSpec spec;
    spec.variable = SweepVariable::Delta;
    spec.grid = {5.7, 5.85, 2, false};
    spec.fixed = ModelParams{6.0, 0.0, 1.0, 0.0};
    spec.methods = {RateMethod::LangevinMc};
    spec.n_trajectories = 64;
    spec.seed = 99;
    const SweepTable a = run_sweep(spec);
    const SweepTable b = run_sweep(spec);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        REQUIRE(a.rows[i].cells[0].rate.has_value());
        REQUIRE(b.rows[i].cells[0].rate.has_value());
        CHECK(a.rows[i].cells[0].rate->value == b.rows[i].cells[0].rate->value);
    }
}

TEST_CASE("numeric sweep column runs through the worker pool deterministically") {
    SweepSpec spec;
    spec.variable = SweepVariable::Delta;
    spec.grid = {1.0, 3.0, 3, false};
    spec.fixed = ModelParams{4.0, 0.0, 1.0, 0.0};
    spec.methods = {RateMethod::NumericGap};
    spec.N_override = 24;
    spec.n_workers = 2;
    const SweepTable a = run_sweep(spec);
    spec.n_workers = 1;
    const SweepTable b = run_sweep(spec);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        REQUIRE(a.rows[i].cells[0].rate.has_value());
        CHECK(a.rows[i].cells[0].rate->value == b.rows[i].cells[0].rate->value);
    }
}

TEST_CASE("golden section recovers a quadratic vertex") {
    const double v = golden_section_minimize([](double x) { return (x - 1.7) * (x - 1.7); },
                                             0.0, 5.0, {1e-9, 200});
    CHECK(std::abs(v - 1.7) < 1e-6);
}

TEST_CASE("optimal detuning with the barrier method") {
    SUBCASE("U = 0: monotone, boundary convention") {
        const OptimalDetuning r =
            find_optimal_detuning(ModelParams{6.0, 0.0, 1.0, 0.0}, RateMethod::KramersBarrier);
        CHECK(r.boundary);
        CHECK(r.delta_opt == 0.0);
    }
    SUBCASE("U/eta = 6.3: interior minimum") {
        const ModelParams p = params_from_theta(6.0, 0.0, 1.0, std::atan(6.3));
        const OptimalDetuning r = find_optimal_detuning(p, RateMethod::KramersBarrier);
        CHECK_FALSE(r.boundary);
        // reference minimizer: bounded scalar minimization to 1e-10
        CHECK(r.delta_opt == doctest::Approx(3.1363128290).epsilon(1e-3));
        CHECK(r.gamma_min == doctest::Approx(9.977540498628e-09).epsilon(1e-4));
    }
    SUBCASE("consistency with a dense brute-force scan") {
        const ModelParams p = params_from_theta(6.0, 0.0, 1.0, std::atan(6.3));
        OptimalDetuningOptions opts;
        const OptimalDetuning r = find_optimal_detuning(p, RateMethod::KramersBarrier, opts);
        // 10^4-point scan oracle
        double best = 1e300, best_d = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const double d = 0.2 + (0.98 * 6.0 - 0.2) * i / 9999.0;
            ModelParams q = p;
            q.Delta = d;
            const double v = rate_barrier(q).value;
            if (v < best) {
                best = v;
                best_d = d;
            }
        }
        const double cell = (0.98 * 6.0 - 0.2) / 119.0;
        CHECK(std::abs(r.delta_opt - best_d) < cell);
    }
}

TEST_CASE("critical ratio via the barrier method brackets and converges") {
    CriticalRatioOptions opts;
    opts.coarse = 120;
    opts.delta_hi_factor = 5.8;  // match the default optimal-detuning window
    const CriticalRatio r = find_critical_ratio(6.0, 1.0, RateMethod::KramersBarrier, opts);
    CHECK(r.closed_form == doctest::Approx(1.5482146269241599).epsilon(1e-12));
    // the analytic curve loses its interior global minimum near U/eta ~ 2.14
    CHECK(r.numeric > 2.0);
    CHECK(r.numeric < 2.3);
}

TEST_CASE("config parsing") {
    const Config cfg = parse_config_text(
        "# comment line\n"
        "G = 6.0\n"
        "Delta=3.5   # trailing comment\n"
        "methods = numeric,barrier\n"
        "\n"
        "seed = 42\n");
    CHECK(cfg.get_double("G", 0.0) == doctest::Approx(6.0));
    CHECK(cfg.get_double("Delta", 0.0) == doctest::Approx(3.5));
    CHECK(cfg.get("methods", "") == "numeric,barrier");
    CHECK(cfg.get_u64("seed", 0) == 42);
    CHECK(cfg.get_double("eta", 1.25) == doctest::Approx(1.25));  // fallback
    CHECK_THROWS_AS(parse_config_text("novalue\n"), ValidationError);
    CHECK_THROWS_AS(parse_config_file("/nonexistent/file.cfg"), IoError);
}

TEST_CASE("shortest round-trip float formatting") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(6.1442123533282108e-08) == "6.144212353328211e-08");
    const double v = 0.027162145323046678;
    CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("csv escaping follows RFC 4180") {
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_escape("line\nbreak") == "\"line\nbreak\"");
}

TEST_CASE("sweep serialization") {
    SweepSpec spec;
    spec.variable = SweepVariable::Delta;
    spec.grid = {1.0, 3.0, 3, false};
    spec.fixed = ModelParams{6.0, 0.0, 1.0, 0.0};
    spec.methods = {RateMethod::NumericGap, RateMethod::KramersBarrier};
    SweepTable t;
    t.variable_name = "Delta";
    t.methods = spec.methods;

    SUBCASE("empty table gives a header-only CSV") {
        const std::string csv = to_csv(sweep_to_table(t));
        CHECK(csv == "Delta,gamma_numeric,gamma_barrier,status_numeric,status_barrier\n");
    }
    SUBCASE("rows carry shortest-round-trip values and statuses") {
        spec.methods = {RateMethod::KramersBarrier};
        const SweepTable full = run_sweep(spec);
        const Table table = sweep_to_table(full);
        CHECK(table.header[0] == "Delta");
        CHECK(table.header[1] == "gamma_barrier");
        CHECK(table.header[2] == "status_barrier");
        REQUIRE(table.rows.size() == 3);
        for (const auto& row : table.rows) {
            CHECK(row[2] == "ok");
            CHECK(std::stod(row[1]) > 0.0);
        }
    }
    SUBCASE("json round-trip of the sweep payload") {
        spec.methods = {RateMethod::KramersBarrier};
        const SweepTable full = run_sweep(spec);
        const ordered_json j = sweep_to_json(full);
        const auto parsed = ordered_json::parse(j.dump());
        CHECK(parsed["variable"] == "Delta");
        REQUIRE(parsed["rows"].size() == 3);
        CHECK(parsed["rows"][0]["cells"][0]["status"] == "ok");
        CHECK(double(parsed["rows"][0]["cells"][0]["gamma"]) ==
              full.rows[0].cells[0].rate->value);
    }
}

TEST_CASE("metadata block") {
    const ModelParams p{6.0, 3.0, 1.0, 0.0};
    SUBCASE("timestamp suppressible") {
        const ordered_json j = metadata_block(p, 7, false);
        CHECK_FALSE(j.contains("timestamp"));
        CHECK(j["seed"] == 7);
        CHECK(j["params"]["G"] == 6.0);
    }
    SUBCASE("suppressed-timestamp blocks are byte-identical across calls") {
        const ordered_json a = metadata_block(p, 7, false, {{"G", "6"}});
        const ordered_json b = metadata_block(p, 7, false, {{"G", "6"}});
        CHECK(a.dump() == b.dump());
    }
    SUBCASE("timestamp present when requested") {
        const ordered_json j = metadata_block(p, 7, true);
        CHECK(j.contains("timestamp"));
    }
}
