#include "kerrcat/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "kerrcat/kramers.hpp"
#include "kerrcat/langevin.hpp"
#include "kerrcat/liouvillian.hpp"

extern "C" void openblas_set_num_threads(int) __attribute__((weak));

namespace kerrcat {

namespace {

void limit_blas_threads(int workers) {
    if (workers > 1 && openblas_set_num_threads) openblas_set_num_threads(1);
}

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    return int(std::max(1u, std::thread::hardware_concurrency()));
}

RateEstimate evaluate_method(const ModelParams& p, RateMethod method, const SweepSpec& spec) {
    switch (method) {
        case RateMethod::NumericGap: {
            const int N = spec.N_override > 0 ? spec.N_override : adaptive_truncation(p);
            try {
                return liouvillian_gap(p, N);
            } catch (const TruncationLeak&) {
                return liouvillian_gap(p, N + 10);  // one retry per spec
            }
        }
        case RateMethod::KramersFull: return rate_full(p);
        case RateMethod::KramersBarrier: return rate_barrier(p);
        case RateMethod::SmallDetuning: return rate_small_detuning(p);
        case RateMethod::NearCritical: return rate_near_critical(p);
        case RateMethod::LangevinMc: {
            LangevinConfig cfg;
            cfg.params = p;
            cfg.dt = spec.dt;
            cfg.n_trajectories = spec.n_trajectories;
            cfg.seed = spec.seed;
            cfg.n_workers = 1;  // the sweep pool already parallelizes
            const EscapeStatistics st = simulate_escape(cfg);
            RateEstimate r = RateEstimate::from_value(st.relaxation_rate, RateMethod::LangevinMc);
            r.metadata["stderr"] = st.stderr_rate;
            r.metadata["seed"] = double(st.seed);
            r.valid = !st.lower_bound;
            if (st.lower_bound) r.validity_note = "censored trajectories: lower bound";
            return r;
        }
        case RateMethod::MinLargeKerr: return rate_min_large_kerr(p);
    }
    throw ValidationError("unknown rate method");
}

std::string error_name(const std::exception& e) {
    if (dynamic_cast<const TruncationLeak*>(&e)) return "truncation_leak";
    if (dynamic_cast<const NoBistability*>(&e)) return "no_bistability";
    if (dynamic_cast<const NegativeDeterminantRatio*>(&e)) return "negative_determinant_ratio";
    if (dynamic_cast<const AllCensored*>(&e)) return "all_censored";
    if (dynamic_cast<const EigensolveFailed*>(&e)) return "eigensolve_failed";
    if (dynamic_cast<const MaxTermsExceeded*>(&e)) return "max_terms_exceeded";
    if (dynamic_cast<const ValidationError*>(&e)) return "validation_error";
    if (dynamic_cast<const Error*>(&e)) return "error";
    return "exception";
}

} // namespace

const char* sweep_variable_name(SweepVariable v) {
    switch (v) {
        case SweepVariable::Delta: return "Delta";
        case SweepVariable::Theta: return "theta";
        case SweepVariable::G: return "G";
        case SweepVariable::UOverEta: return "U_over_eta";
    }
    return "unknown";
}

std::vector<double> grid_points(const SweepGrid& grid) {
    if (grid.count < 2) throw ValidationError("grid count must be >= 2");
    if (!(grid.start < grid.stop)) throw ValidationError("grid start must be < stop");
    if (grid.log_spacing && !(grid.start > 0.0)) {
        throw ValidationError("log spacing requires positive endpoints");
    }
    std::vector<double> pts(static_cast<std::size_t>(grid.count));
    if (grid.log_spacing) {
        const double l0 = std::log(grid.start), l1 = std::log(grid.stop);
        for (int i = 0; i < grid.count; ++i) {
            pts[static_cast<std::size_t>(i)] = std::exp(l0 + (l1 - l0) * i / (grid.count - 1));
        }
    } else {
        for (int i = 0; i < grid.count; ++i) {
            pts[static_cast<std::size_t>(i)] = grid.start + (grid.stop - grid.start) * i / (grid.count - 1);
        }
    }
    return pts;
}

ModelParams apply_sweep_value(const SweepSpec& spec, double value) {
    ModelParams p = spec.fixed;
    switch (spec.variable) {
        case SweepVariable::Delta:
            p.Delta = value;
            break;
        case SweepVariable::Theta:
            return params_from_theta(p.G, p.Delta, p.kappa2_modulus(), value);
        case SweepVariable::G:
            p.G = value;
            break;
        case SweepVariable::UOverEta:
            return params_from_theta(p.G, p.Delta, p.kappa2_modulus(), std::atan(value));
    }
    return p;
}

bool SweepTable::any_failures() const {
    for (const auto& row : rows) {
        for (const auto& cell : row.cells) {
            if (cell.status != "ok") return true;
        }
    }
    return false;
}

SweepTable run_sweep(const SweepSpec& spec) {
    if (spec.methods.empty()) throw ValidationError("sweep needs at least one method");
    validate(spec.fixed);
    const std::vector<double> pts = grid_points(spec.grid);

    SweepTable table;
    table.variable_name = sweep_variable_name(spec.variable);
    table.methods = spec.methods;
    table.rows.resize(pts.size());

    const int workers = std::min<int>(resolve_workers(spec.n_workers), int(pts.size()));
    limit_blas_threads(workers);

    std::atomic<std::size_t> next{0};
    auto run_point = [&](std::size_t i) {
        SweepRow row;
        row.swept = pts[i];
        row.params = apply_sweep_value(spec, pts[i]);
        row.cells.resize(spec.methods.size());
        for (std::size_t k = 0; k < spec.methods.size(); ++k) {
            try {
                row.cells[k].rate = evaluate_method(row.params, spec.methods[k], spec);
            } catch (const std::exception& e) {
                row.cells[k].status = error_name(e);
            }
        }
        table.rows[i] = std::move(row);
    };

    if (workers <= 1) {
        for (std::size_t i = 0; i < pts.size(); ++i) run_point(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int t = 0; t < workers; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < pts.size(); i = next.fetch_add(1)) {
                    run_point(i);
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    return table;
}

double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                               const GoldenOptions& opts) {
    if (!(lo < hi)) throw ValidationError("golden section needs lo < hi");
    const double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < opts.max_iter && (b - a) > opts.tol; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

namespace {

double method_log_rate(const ModelParams& p, RateMethod method, int N_override) {
    SweepSpec dummy;
    dummy.N_override = N_override;
    const RateEstimate r = evaluate_method(p, method, dummy);
    return r.log_value;
}

} // namespace

OptimalDetuning find_optimal_detuning(const ModelParams& fixed, RateMethod method,
                                      const OptimalDetuningOptions& opts) {
    if (method != RateMethod::NumericGap && method != RateMethod::KramersBarrier) {
        throw ValidationError("optimal-detuning supports the numeric-gap and barrier methods");
    }
    validate(fixed);
    const double k2 = fixed.kappa2_modulus();
    const double lo = opts.delta_lo > 0.0 ? opts.delta_lo : 0.2 * k2;
    const double hi = opts.delta_hi > 0.0 ? opts.delta_hi : 0.98 * fixed.G;
    if (!(lo < hi) || !(hi < fixed.G)) throw ValidationError("Delta range must lie inside (0, G)");

    const int count = std::max(opts.coarse, 3);
    std::vector<double> deltas = grid_points({lo, hi, count, false});
    std::vector<double> logs(deltas.size(), std::numeric_limits<double>::infinity());

    OptimalDetuning res;
    std::atomic<int> evals{0};
    const int workers = std::min<int>(resolve_workers(opts.n_workers), count);
    limit_blas_threads(workers);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < deltas.size(); i = next.fetch_add(1)) {
            ModelParams p = fixed;
            p.Delta = deltas[i];
            try {
                logs[i] = method_log_rate(p, method, opts.N_override);
                evals.fetch_add(1);
            } catch (const std::exception&) {
                // left as +inf, never the minimum
            }
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    const std::size_t imin =
        static_cast<std::size_t>(std::min_element(logs.begin(), logs.end()) - logs.begin());
    if (!std::isfinite(logs[imin])) throw ValidationError("every grid point failed");

    if (imin == 0 || imin + 1 == deltas.size()) {
        res.boundary = true;
        res.delta_opt = 0.0;  // monotone case, by convention
        res.gamma_min = std::exp(logs[imin]);
        res.evaluations = evals.load();
        return res;
    }

    auto f = [&](double d) {
        ModelParams p = fixed;
        p.Delta = d;
        evals.fetch_add(1);
        try {
            return method_log_rate(p, method, opts.N_override);
        } catch (const std::exception&) {
            return std::numeric_limits<double>::infinity();
        }
    };
    GoldenOptions gopt;
    gopt.tol = opts.refine_tol;
    res.delta_opt = golden_section_minimize(f, deltas[imin - 1], deltas[imin + 1], gopt);
    res.gamma_min = std::exp(f(res.delta_opt));
    res.boundary = false;
    res.evaluations = evals.load();
    return res;
}

CriticalRatio find_critical_ratio(double G, double kappa2_mod, RateMethod method,
                                  const CriticalRatioOptions& opts) {
    if (!(G / kappa2_mod > 1.0)) throw ValidationError("requires G/|kappa2| > 1");
    CriticalRatio out;
    out.closed_form = critical_ratio_closed_form(G, kappa2_mod);

    OptimalDetuningOptions od;
    od.delta_lo = opts.delta_lo_factor * kappa2_mod;
    od.delta_hi = std::min(opts.delta_hi_factor * kappa2_mod, 0.97 * G);
    od.coarse = opts.coarse;
    od.N_override = opts.N_override;
    od.n_workers = opts.n_workers;

    int evals = 0;
    auto interior = [&](double ratio) {
        const ModelParams p = params_from_theta(G, 0.0, kappa2_mod, std::atan(ratio));
        const OptimalDetuning r = find_optimal_detuning(p, method, od);
        evals += r.evaluations;
        return !r.boundary;
    };

    double lo = opts.ratio_lo, hi = opts.ratio_hi;
    const bool flo = interior(lo);
    const bool fhi = interior(hi);
    if (flo == fhi) {
        throw PredicateNotBracketed("both ratio endpoints classify alike");
    }
    while (hi - lo > opts.ratio_tol) {
        const double mid = 0.5 * (lo + hi);
        if (interior(mid) == flo) lo = mid;
        else hi = mid;
    }
    out.numeric = 0.5 * (lo + hi);
    out.evaluations = evals;
    return out;
}

} // namespace kerrcat
