// Batch evaluation of the rate methods over parameter grids, the optimal
// detuning search, and the critical-ratio finder. Grid points are
// independent; the numeric-gap eigensolves run on a small worker pool and the
// results are gathered in grid order.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kerrcat/model.hpp"
#include "kerrcat/rate.hpp"

namespace kerrcat {

enum class SweepVariable { Delta, Theta, G, UOverEta };

const char* sweep_variable_name(SweepVariable v);

struct SweepGrid {
    double start = 0.0;
    double stop = 1.0;
    int count = 2;
    bool log_spacing = false;
};

std::vector<double> grid_points(const SweepGrid& grid);

struct SweepSpec {
    SweepVariable variable = SweepVariable::Delta;
    SweepGrid grid;
    ModelParams fixed;                 // base parameters; theta/U_over_eta sweeps
                                       // keep |kappa2| of `fixed` constant
    std::vector<RateMethod> methods;
    int N_override = 0;                // 0 = adaptive truncation
    std::uint64_t seed = 1;            // langevin points
    double dt = 1e-3;                  // langevin step
    int n_trajectories = 2000;
    int n_workers = 0;                 // 0 = hardware concurrency
};

struct SweepCell {
    std::optional<RateEstimate> rate;  // empty on failure
    std::string status = "ok";         // "ok" or the error name
};

struct SweepRow {
    double swept = 0.0;
    ModelParams params;
    std::vector<SweepCell> cells;      // one per method, in spec order
};

struct SweepTable {
    std::string variable_name;
    std::vector<RateMethod> methods;
    std::vector<SweepRow> rows;

    bool any_failures() const;
};

// Per-point errors land in the cell status; numeric-gap truncation leaks are
// retried once with N+10 before being recorded as missing.
SweepTable run_sweep(const SweepSpec& spec);

// Applies the swept value to the fixed parameters (exposed for the CLI).
ModelParams apply_sweep_value(const SweepSpec& spec, double value);

// ---------------------------------------------------------------------------

struct GoldenOptions {
    double tol = 1e-8;   // absolute x tolerance
    int max_iter = 200;
};

// Golden-section minimizer on [lo, hi] for a unimodal function.
double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                               const GoldenOptions& opts = {});

struct OptimalDetuningOptions {
    double delta_lo = 0.0;   // <= 0 means 0.2 |kappa2|
    double delta_hi = 0.0;   // <= 0 means 0.98 G
    int coarse = 120;
    int N_override = 0;
    int n_workers = 0;
    double refine_tol = 1e-4;  // golden-section absolute tolerance
};

struct OptimalDetuning {
    double delta_opt = 0.0;   // 0 by convention when the minimum is at the range edge
    double gamma_min = 0.0;
    bool boundary = false;
    int evaluations = 0;
};

// Coarse scan + golden refinement of Gamma(Delta). The reported minimum is
// the global one over the scan; a minimum at the range edge sets the boundary
// flag with delta_opt = 0 (monotone case).
OptimalDetuning find_optimal_detuning(const ModelParams& fixed, RateMethod method,
                                      const OptimalDetuningOptions& opts = {});

struct CriticalRatioOptions {
    double ratio_lo = 0.1;
    double ratio_hi = 20.0;
    double ratio_tol = 1e-2;
    // Delta-scan used by the interior-minimum predicate
    double delta_lo_factor = 0.2;   // in units of |kappa2|
    double delta_hi_factor = 3.0;
    int coarse = 25;
    int N_override = 0;
    int n_workers = 0;
};

struct CriticalRatio {
    double numeric = 0.0;      // bisection on the interior-minimum predicate
    double closed_form = 0.0;  // Eq.-level closed form, for comparison
    int evaluations = 0;
};

// Bisection over U/eta at fixed |kappa2| of the predicate
// "find_optimal_detuning returns an interior minimum".
// Throws PredicateNotBracketed when both endpoints classify alike.
CriticalRatio find_critical_ratio(double G, double kappa2_mod, RateMethod method,
                                  const CriticalRatioOptions& opts = {});

} // namespace kerrcat
