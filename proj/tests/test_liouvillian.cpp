#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "kerrcat/kramers.hpp"
#include "kerrcat/liouvillian.hpp"

using namespace kerrcat;

namespace {

// time-propagation oracle: first-order stepping of vec(rho), small dt
VectorXcd propagate(const MatrixXcd& L, VectorXcd v, double dt, int steps) {
    for (int i = 0; i < steps; ++i) v += dt * (L * v);
    return v;
}

std::vector<complexd> sorted_eigs(std::vector<complexd> v) {
    std::sort(v.begin(), v.end(), [](complexd a, complexd b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
    return v;
}

// Greedy nearest matching between two eigenvalue multisets; conjugate pairs
// have identical real parts, so sorted pairwise comparison is not stable
// across two independent eigensolves.
double multiset_distance(const std::vector<complexd>& a, std::vector<complexd> b) {
    double worst = 0.0;
    for (const complexd& x : a) {
        std::size_t best = 0;
        double bd = 1e300;
        for (std::size_t i = 0; i < b.size(); ++i) {
            const double d = std::abs(x - b[i]);
            if (d < bd) {
                bd = d;
                best = i;
            }
        }
        worst = std::max(worst, bd);
        b.erase(b.begin() + static_cast<long>(best));
    }
    return worst;
}

} // namespace

TEST_CASE("annihilation operator entries") {
    const MatrixXcd a = annihilation_operator(4);
    CHECK(a(0, 1).real() == doctest::Approx(1.0));
    CHECK(a(1, 2).real() == doctest::Approx(std::sqrt(2.0)));
    CHECK(a(2, 3).real() == doctest::Approx(std::sqrt(3.0)));
    CHECK(a.cwiseAbs().sum() == doctest::Approx(1.0 + std::sqrt(2.0) + std::sqrt(3.0)));
    CHECK_THROWS_AS(annihilation_operator(1), TruncationTooSmall);
}

TEST_CASE("hamiltonian builds") {
    SUBCASE("number term only") {
        const MatrixXcd h = build_hamiltonian(ModelParams{1e-300, 1.0, 1.0, 0.0}, 2);
        CHECK(h(0, 0).real() == doctest::Approx(0.0));
        CHECK(h(1, 1).real() == doctest::Approx(-1.0));
    }
    SUBCASE("two-photon drive couples |0> and |2>") {
        const MatrixXcd h = build_hamiltonian(ModelParams{6.0, 0.0, 1.0, 0.0}, 3);
        CHECK(std::abs(h(2, 0) - complexd{0.0, 3.0 * std::sqrt(2.0)}) < 1e-14);
        CHECK(std::abs(h(0, 2) - complexd{0.0, -3.0 * std::sqrt(2.0)}) < 1e-14);
        CHECK(std::abs(h(1, 1)) < 1e-14);
    }
    SUBCASE("Kerr term diagonal") {
        const MatrixXcd h = build_hamiltonian(ModelParams{1e-300, 0.0, 1.0, 2.0}, 3);
        CHECK(h(0, 0).real() == doctest::Approx(0.0));
        CHECK(h(1, 1).real() == doctest::Approx(0.0));
        CHECK(h(2, 2).real() == doctest::Approx(2.0));
    }
    SUBCASE("hermiticity") {
        const MatrixXcd h = build_hamiltonian(ModelParams{6.0, 3.0, 1.0, 0.5}, 20);
        CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-12 * h.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("liouvillian structure") {
    const ModelParams p{6.0, 2.0, 0.8, 0.6};
    const int N = 8;
    const MatrixXcd L = build_liouvillian(p, N);

    SUBCASE("trace preservation: Tr is a left null vector") {
        Eigen::RowVectorXcd tr = Eigen::RowVectorXcd::Zero(N * N);
        for (int n = 0; n < N; ++n) tr(n + N * n) = 1.0;
        CHECK((tr * L).cwiseAbs().maxCoeff() < 1e-10 * L.cwiseAbs().maxCoeff());
    }
    SUBCASE("a first-order step preserves hermiticity") {
        std::mt19937_64 rng(2);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        MatrixXcd rho(N, N);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) rho(i, j) = complexd{u(rng), u(rng)};
        rho = (rho + rho.adjoint()).eval();
        VectorXcd v = Eigen::Map<VectorXcd>(rho.data(), N * N);
        const VectorXcd w = propagate(L, v, 1e-6, 10);
        MatrixXcd out = Eigen::Map<const MatrixXcd>(w.data(), N, N);
        CHECK((out - out.adjoint()).cwiseAbs().maxCoeff() < 1e-9 * out.cwiseAbs().maxCoeff());
    }
    SUBCASE("truncation guard") {
        CHECK_THROWS_AS(build_liouvillian(p, 3), TruncationTooSmall);
    }
}

TEST_CASE("vacuum is dark for the undriven dissipator") {
    const MatrixXcd L = build_liouvillian(ModelParams{1e-300, 0.0, 1.0, 0.0}, 6);
    VectorXcd v = VectorXcd::Zero(36);
    v(0) = 1.0;  // vec(|0><0|)
    CHECK((L * v).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("population decay oracle: |2><2| decays at 2 eta") {
    // independent first-order propagation of the master equation
    const double eta = 1.0;
    const int N = 8;
    const MatrixXcd L = build_liouvillian(ModelParams{1e-300, 0.0, eta, 0.0}, N);
    VectorXcd v = VectorXcd::Zero(N * N);
    v(2 + N * 2) = 1.0;
    const double dt = 1e-5;
    const int steps = 2000;
    const VectorXcd w = propagate(L, v, dt, steps);
    const double pop = w(2 + N * 2).real();
    const double fitted_rate = -std::log(pop) / (dt * steps);
    CHECK(fitted_rate == doctest::Approx(2.0 * eta).epsilon(1e-3));
    // the matching diagonal entry of L
    CHECK(L(2 + N * 2, 2 + N * 2).real() == doctest::Approx(-2.0 * eta).epsilon(1e-14));
}

TEST_CASE("unitary limit: purely imaginary spectrum at eta = 0") {
    const MatrixXcd L = build_liouvillian(ModelParams{6.0, 2.0, 0.0, 1.0}, 10);
    const SpectrumResult sr = spectrum(L, 1e-12);
    double worst = 0.0;
    for (const complexd& ev : sr.eigenvalues) worst = std::max(worst, std::abs(ev.real()));
    CHECK(worst < 1e-9 * sr.scale);
}

TEST_CASE("parity blocks") {
    const ModelParams p{6.0, 1.5, 0.8, 0.6};
    const int N = 8;
    const MatrixXcd L = build_liouvillian(p, N);
    const ParityBlocks pb = parity_blocks(L, N);

    SUBCASE("block dimensions: N^2/2 each for even N") {
        CHECK(pb.even.rows() == N * N / 2);
        CHECK(pb.odd.rows() == N * N / 2);
    }
    SUBCASE("no coupling between the blocks") {
        for (int ie : pb.even_indices) {
            for (int io : pb.odd_indices) {
                CHECK(std::abs(L(ie, io)) == 0.0);
                CHECK(std::abs(L(io, ie)) == 0.0);
            }
        }
    }
    SUBCASE("union of block spectra equals the full spectrum") {
        const auto full = spectrum(L, 1e-12).eigenvalues;
        auto se = spectrum(pb.even, 1e-12).eigenvalues;
        const auto so = spectrum(pb.odd, 1e-12).eigenvalues;
        se.insert(se.end(), so.begin(), so.end());
        REQUIRE(full.size() == se.size());
        const double scale = std::abs(full.front()) + std::abs(full.back()) + 1.0;
        CHECK(multiset_distance(full, se) < 1e-8 * scale);
    }
    SUBCASE("gap from blocks equals the unblocked gap") {
        const double g_full = spectrum(L, 1e-12).gap;
        auto se = spectrum(pb.even, 1e-12).eigenvalues;
        const auto so = spectrum(pb.odd, 1e-12).eigenvalues;
        se.insert(se.end(), so.begin(), so.end());
        const auto merged = sorted_eigs(se);
        double g_blocks = 0.0;
        const double tol = 1e-12 * spectrum(L, 1e-12).scale;
        for (const complexd& ev : merged) {
            if (std::abs(ev.real()) >= tol) {
                g_blocks = -ev.real();
                break;
            }
        }
        CHECK(g_blocks == doctest::Approx(g_full).epsilon(1e-8));
    }
}

TEST_CASE("spectrum lies in the closed left half-plane, conjugate-paired") {
    const ModelParams p{6.0, 1.0, 1.0, 0.3};
    const int N = 10;
    const SpectrumResult sr = spectrum(build_liouvillian(p, N), 1e-12);
    for (const complexd& ev : sr.eigenvalues) {
        CHECK(ev.real() <= 1e-12 * sr.scale);
    }
    // conjugation closure: the multiset matches its conjugate
    const auto a = sorted_eigs(sr.eigenvalues);
    std::vector<complexd> conj;
    conj.reserve(a.size());
    for (const complexd& ev : a) conj.push_back(std::conj(ev));
    CHECK(multiset_distance(a, conj) < 1e-8 * sr.scale);
}

TEST_CASE("strong Z2: two exact zeros off-resonance, four at Delta = 0") {
    // the parity charge Tr(P rho) is conserved for every Delta, so each
    // charge sector holds one steady state; the Delta = 0 dark space adds the
    // two coherence zeros
    SUBCASE("Delta != 0") {
        const SpectrumResult sr = sector_spectrum(ModelParams{6.0, 1.0, 0.8, 0.6}, 24, 1e-12);
        CHECK(sr.steady_count == 2);
    }
    SUBCASE("Delta = 0") {
        const SpectrumResult sr = sector_spectrum(ModelParams{6.0, 0.0, 1.0, 1.0}, 36, 1e-12);
        CHECK(sr.steady_count == 4);
    }
}

TEST_CASE("sector spectrum equals the full spectrum") {
    const ModelParams p{5.0, 1.2, 0.9, 0.4};
    const int N = 8;
    const auto full = sorted_eigs(spectrum(build_liouvillian(p, N), 1e-12).eigenvalues);
    const auto split = sector_spectrum(p, N, 1e-12).eigenvalues;
    REQUIRE(full.size() == split.size());
    const double scale = std::abs(full.back()) + 1.0;
    CHECK(multiset_distance(full, split) < 1e-8 * scale);
}

TEST_CASE("steady states are physical") {
    const ModelParams p{6.0, 1.0, 1.0, 0.0};
    const int N = 30;
    for (int parity = 0; parity < 2; ++parity) {
        const MatrixXcd rho = steady_state_sector(p, N, parity);
        CHECK(std::abs(rho.trace().real() - 1.0) < 1e-10);
        CHECK(std::abs(rho.trace().imag()) < 1e-10);
        CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-8);
        // stationarity: L vec(rho) ~ 0
        const MatrixXcd L = build_liouvillian(p, N);
        VectorXcd v(N * N);
        for (int m = 0; m < N; ++m)
            for (int n = 0; n < N; ++n) v(n + N * m) = rho(n, m);
        CHECK((L * v).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("liouvillian gap against the independent rate laws") {
    SUBCASE("small detuning, Eq.-level reference 6.14e-8 within 20%") {
        const ModelParams p{6.0, 0.05, 1.0, 0.0};
        const RateEstimate r = liouvillian_gap(p, 36);
        const double ref = rate_small_detuning(p).value;
        CHECK(r.value / ref > 0.8);
        CHECK(r.value / ref < 1.2);
        CHECK(r.metadata.at("steady_count") == 2.0);
    }
    SUBCASE("barrier regime within 25% of the U = 0 closed form") {
        const ModelParams p{6.0, 3.0, 1.0, 0.0};
        const RateEstimate r = liouvillian_gap(p, 36);
        const double ref = rate_barrier(p).value;  // = Eq.-24 value 0.0271621
        CHECK(std::abs(r.value / ref - 1.0) < 0.25);
    }
    SUBCASE("resonant rate vanishes (dark space)") {
        const RateEstimate r = liouvillian_gap(ModelParams{6.0, 0.0, 1.0, 1.0}, 36);
        CHECK(r.value == 0.0);
        CHECK(r.metadata.at("steady_count") == 4.0);
    }
}

TEST_CASE("gap is stable under N -> N + 10 once converged") {
    const ModelParams p{6.0, 3.0, 1.0, 0.0};
    const double g1 = liouvillian_gap(p, 34).value;
    const double g2 = liouvillian_gap(p, 44).value;
    CHECK(std::abs(g2 / g1 - 1.0) < 0.01);
}

TEST_CASE("gap computation is deterministic") {
    const ModelParams p{6.0, 2.0, 0.8, 0.6};
    const double a = liouvillian_gap(p, 30).value;
    const double b = liouvillian_gap(p, 30).value;
    CHECK(a == b);
}

TEST_CASE("deliberate under-truncation raises TruncationLeak") {
    // n0 ~ 5 with N = 4
    CHECK_THROWS_AS(liouvillian_gap(ModelParams{5.0, 0.0, 1.0, 0.0}, 4), TruncationLeak);
}

TEST_CASE("adaptive truncation tracks the photon number") {
    const int N = adaptive_truncation(ModelParams{6.0, 0.0, 1.0, 0.0});
    CHECK(N == 36);  // ceil(6 + 8 sqrt 6 + 10)
    CHECK(adaptive_truncation(ModelParams{6.0, 3.0, 0.156434465040231, 0.987688340595138}) >= 39);
}

TEST_CASE("eta = 0 gap request is rejected") {
    CHECK_THROWS_AS(liouvillian_gap(ModelParams{6.0, 1.0, 0.0, 1.0}, 12), ValidationError);
}
