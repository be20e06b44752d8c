// Near-critical effective Langevin dynamics (U = 0),
//
//   x'' + 2 eta x^2 x' = -V'(x)/m + x sqrt(4 eta T_eff/m) xi(t),
//
// integrated as the first-order Ito system with an explicit Euler-Maruyama
// step (the noise coefficient is independent of the velocity, so the Ito and
// Stratonovich readings coincide). Mean first-passage times from the well at
// +x0 to the saddle x = 0 give the Monte-Carlo switching rate.

#pragma once

#include <cstdint>
#include <vector>

#include "kerrcat/kramers.hpp"
#include "kerrcat/model.hpp"

namespace kerrcat {

struct LangevinConfig {
    ModelParams params;        // U must be 0
    double dt = 1e-3;
    int n_trajectories = 1000;
    double max_time = 1000.0;  // censoring cutoff per trajectory
    std::uint64_t seed = 1;
    int n_workers = 0;         // 0 = hardware concurrency
};

struct EscapeStatistics {
    double mean_fpt = 0.0;
    double stderr_fpt = 0.0;
    int n_escaped = 0;
    int n_censored = 0;
    // One-way-rate bookkeeping (from the saddle the particle proceeds to
    // either well with probability 1/2): 1/(2 MFPT).
    double implied_rate = 0.0;
    // Relaxation-rate (Liouvillian-gap) convention, the sum of both one-way
    // rates: 1/MFPT. This is the quantity the closed-form rates estimate.
    double relaxation_rate = 0.0;
    double stderr_rate = 0.0;  // propagated to relaxation_rate
    bool lower_bound = false;  // censored trajectories present: rates are lower bounds
    bool dt_warning = false;   // dt * stiffest rate >= 0.1
    std::uint64_t seed = 0;
};

// Throws AllCensored when no trajectory escapes before max_time.
EscapeStatistics simulate_escape(const LangevinConfig& config);

struct StationaryHistogram {
    std::vector<double> bin_edges;   // size bins+1, over x
    std::vector<std::uint64_t> counts;
    double v_mean = 0.0;
    double v_variance = 0.0;         // expect T_eff/m = G^2
    std::uint64_t n_samples = 0;
};

// Long-run sampling of (x, v) from one trajectory; burn_in and thinning in
// units of steps.
StationaryHistogram sample_stationary_histogram(const LangevinConfig& config,
                                                std::uint64_t burn_in_steps,
                                                std::uint64_t n_samples,
                                                std::uint64_t thin = 10,
                                                int bins = 61);

} // namespace kerrcat
