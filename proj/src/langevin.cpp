#include "kerrcat/langevin.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

namespace kerrcat {

namespace {

struct System {
    EffectivePotential ep;
    double eta;
    double noise_amp;  // sqrt(4 eta T_eff / m) = 2 G sqrt(eta)

    double drift_w(double x, double w) const {
        return -2.0 * eta * x * x * w - ep.dV(x) / ep.m;
    }
};

System make_system(const LangevinConfig& cfg) {
    validate(cfg.params);
    if (cfg.params.U != 0.0) {
        throw ValidationError("the effective Langevin equation is derived at U = 0");
    }
    if (!(cfg.dt > 0.0)) throw ValidationError("dt must be positive");
    System s;
    s.ep = wigner_effective_potential(cfg.params);
    s.eta = cfg.params.eta;
    s.noise_amp = std::sqrt(4.0 * s.eta * s.ep.T_eff / s.ep.m);
    return s;
}

std::mt19937_64 trajectory_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

// first time x crosses 0 starting from (x0, 0); negative when censored
double first_passage(const System& s, const LangevinConfig& cfg, std::uint64_t index) {
    auto rng = trajectory_rng(cfg.seed, index);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double sqdt = std::sqrt(cfg.dt);
    double x = s.ep.x0, w = 0.0;
    const std::uint64_t n_steps = static_cast<std::uint64_t>(cfg.max_time / cfg.dt);
    for (std::uint64_t k = 0; k < n_steps; ++k) {
        const double wn = w + cfg.dt * s.drift_w(x, w) + x * s.noise_amp * sqdt * gauss(rng);
        x += cfg.dt * w;
        w = wn;
        if (x <= 0.0) return double(k + 1) * cfg.dt;
    }
    return -1.0;
}

} // namespace

EscapeStatistics simulate_escape(const LangevinConfig& config) {
    const System s = make_system(config);
    if (config.n_trajectories < 1) throw ValidationError("need at least one trajectory");
    if (!(config.params.Delta < config.params.G)) {
        throw NoBistability("escape from a well requires Delta < G");
    }

    std::vector<double> fpt(static_cast<std::size_t>(config.n_trajectories));
    int n_workers = config.n_workers > 0 ? config.n_workers
                                         : int(std::max(1u, std::thread::hardware_concurrency()));
    n_workers = std::min<int>(n_workers, config.n_trajectories);

    // per-trajectory derived seeds: the partition across workers cannot
    // change the result
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int t = 0; t < n_workers; ++t) {
        pool.emplace_back([&, t] {
            for (int i = t; i < config.n_trajectories; i += n_workers) {
                fpt[static_cast<std::size_t>(i)] = first_passage(s, config, std::uint64_t(i));
            }
        });
    }
    for (auto& th : pool) th.join();

    EscapeStatistics st;
    st.seed = config.seed;
    st.dt_warning = config.dt * std::max(2.0 * s.eta * s.ep.x0 * s.ep.x0, s.ep.omega0) >= 0.1;
    double sum = 0.0, sum2 = 0.0;
    for (double v : fpt) {
        if (v < 0.0) {
            ++st.n_censored;
        } else {
            ++st.n_escaped;
            sum += v;
            sum2 += v * v;
        }
    }
    if (st.n_escaped == 0) throw AllCensored("no trajectory escaped before max_time");
    st.lower_bound = st.n_censored > 0;
    st.mean_fpt = sum / st.n_escaped;
    if (st.n_escaped > 1) {
        const double var = (sum2 - sum * sum / st.n_escaped) / (st.n_escaped - 1);
        st.stderr_fpt = std::sqrt(std::max(var, 0.0) / st.n_escaped);
    }
    st.implied_rate = 1.0 / (2.0 * st.mean_fpt);
    st.relaxation_rate = 1.0 / st.mean_fpt;
    st.stderr_rate = st.stderr_fpt / (st.mean_fpt * st.mean_fpt);
    return st;
}

StationaryHistogram sample_stationary_histogram(const LangevinConfig& config,
                                                std::uint64_t burn_in_steps,
                                                std::uint64_t n_samples,
                                                std::uint64_t thin,
                                                int bins) {
    const System s = make_system(config);
    if (n_samples == 0 || bins < 2 || thin == 0) {
        throw ValidationError("need n_samples > 0, thin > 0, bins >= 2");
    }
    auto rng = trajectory_rng(config.seed, 0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double sqdt = std::sqrt(config.dt);

    // histogram extent from the Gibbs spread: walls where V reaches ~3 T_eff
    const double x_sext = std::pow(3.0 * s.ep.T_eff / s.ep.sext_coeff, 1.0 / 6.0);
    double range = std::max(2.5 * s.ep.x0, 1.25 * x_sext);
    if (s.ep.quad_coeff > 0.0) {
        range = std::max(range, 1.25 * std::sqrt(3.0 * s.ep.T_eff / s.ep.quad_coeff));
    }
    StationaryHistogram h;
    h.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
    for (int i = 0; i <= bins; ++i) {
        h.bin_edges[static_cast<std::size_t>(i)] = -range + 2.0 * range * double(i) / bins;
    }
    h.counts.assign(static_cast<std::size_t>(bins), 0);

    double x = s.ep.x0, w = 0.0;
    double vsum = 0.0, vsum2 = 0.0;
    std::uint64_t got = 0, step = 0;
    while (got < n_samples) {
        const double wn = w + config.dt * s.drift_w(x, w) + x * s.noise_amp * sqdt * gauss(rng);
        x += config.dt * w;
        w = wn;
        ++step;
        if (step > burn_in_steps && step % thin == 0) {
            ++got;
            vsum += w;
            vsum2 += w * w;
            const double f = (x + range) / (2.0 * range) * bins;
            const int b = std::clamp(int(std::floor(f)), 0, bins - 1);
            ++h.counts[static_cast<std::size_t>(b)];
        }
    }
    h.n_samples = got;
    h.v_mean = vsum / double(got);
    h.v_variance = vsum2 / double(got) - h.v_mean * h.v_mean;
    return h;
}

} // namespace kerrcat
