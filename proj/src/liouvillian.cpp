#include "kerrcat/liouvillian.hpp"

#include <algorithm>
#include <cmath>

#include <lapacke.h>

#include "kerrcat/semiclassical.hpp"

namespace kerrcat {

namespace {

// eigenvalues only, dense non-Hermitian complex; column-major in == Eigen default
std::vector<complexd> zgeev_eigenvalues(MatrixXcd m) {
    const lapack_int n = static_cast<lapack_int>(m.rows());
    std::vector<complexd> w(static_cast<std::size_t>(n));
    const lapack_int info = LAPACKE_zgeev(
        LAPACK_COL_MAJOR, 'N', 'N', n,
        reinterpret_cast<lapack_complex_double*>(m.data()), n,
        reinterpret_cast<lapack_complex_double*>(w.data()), nullptr, 1, nullptr, 1);
    if (info != 0) {
        throw EigensolveFailed("zgeev failed with info = " + std::to_string(info));
    }
    return w;
}

void sort_by_descending_real(std::vector<complexd>& v) {
    std::sort(v.begin(), v.end(), [](const complexd& a, const complexd& b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
}

double max_row_sum(const MatrixXcd& m) {
    double best = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        best = std::max(best, m.row(i).cwiseAbs().sum());
    }
    return best;
}

std::vector<int> sector_vec_indices(int N, int pn, int pm) {
    std::vector<int> idx;
    idx.reserve(static_cast<std::size_t>(N) * N / 4 + N);
    for (int mm = pm; mm < N; mm += 2) {
        for (int nn = pn; nn < N; nn += 2) {
            idx.push_back(nn + N * mm);
        }
    }
    return idx;
}

MatrixXcd select_block(const MatrixXcd& L, const std::vector<int>& idx) {
    MatrixXcd b(idx.size(), idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j) {
        for (std::size_t i = 0; i < idx.size(); ++i) {
            b(i, j) = L(idx[i], idx[j]);
        }
    }
    return b;
}

int top_diagonal_index(int N, int parity) {
    int k = N - 1;
    while (k % 2 != parity) --k;
    return k;
}

} // namespace

MatrixXcd annihilation_operator(int N) {
    if (N < 2) throw TruncationTooSmall("Fock truncation must be at least 2");
    MatrixXcd a = MatrixXcd::Zero(N, N);
    for (int n = 1; n < N; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

MatrixXcd build_hamiltonian(const ModelParams& params, int N) {
    validate(params);
    const MatrixXcd a = annihilation_operator(N);
    const MatrixXcd ad = a.adjoint();
    const complexd i{0.0, 1.0};
    return -params.Delta * (ad * a) + 0.5 * params.U * (ad * ad * a * a) +
           0.5 * i * params.G * (ad * ad - a * a);
}

MatrixXcd build_liouvillian(const ModelParams& params, int N) {
    if (N < 4) throw TruncationTooSmall("two-photon jump needs N >= 4");
    const MatrixXcd H = build_hamiltonian(params, N);
    const MatrixXcd a = annihilation_operator(N);
    const MatrixXcd a2 = a * a;
    const MatrixXcd n2 = a2.adjoint() * a2;
    const MatrixXcd I = MatrixXcd::Identity(N, N);
    const complexd i{0.0, 1.0};

    auto kron = [N](const MatrixXcd& A, const MatrixXcd& B) {
        MatrixXcd K(N * N, N * N);
        for (int cj = 0; cj < N; ++cj)
            for (int ci = 0; ci < N; ++ci)
                K.block(ci * N, cj * N, N, N) = A(ci, cj) * B;
        return K;
    };

    MatrixXcd L = -i * (kron(I, H) - kron(H.transpose(), I));
    L += 0.5 * params.eta *
         (2.0 * kron(a2.conjugate(), a2) - kron(I, n2) - kron(n2.transpose(), I));
    return L;
}

ParityBlocks parity_blocks(const MatrixXcd& superop, int N) {
    if (superop.rows() != N * N) throw ValidationError("superoperator size does not match N");
    ParityBlocks pb;
    for (int mm = 0; mm < N; ++mm) {
        for (int nn = 0; nn < N; ++nn) {
            ((nn + mm) % 2 == 0 ? pb.even_indices : pb.odd_indices).push_back(nn + N * mm);
        }
    }
    pb.even = select_block(superop, pb.even_indices);
    pb.odd = select_block(superop, pb.odd_indices);
    return pb;
}

SpectrumResult spectrum(const MatrixXcd& superop, double zero_tol) {
    if (!superop.allFinite()) throw ValidationError("superoperator has non-finite entries");
    SpectrumResult r;
    r.scale = max_row_sum(superop);
    r.eigenvalues = zgeev_eigenvalues(superop);
    sort_by_descending_real(r.eigenvalues);
    const double tol = zero_tol * r.scale;
    for (const complexd& ev : r.eigenvalues) {
        if (std::abs(ev.real()) < tol) ++r.steady_count;
    }
    r.gap = 0.0;
    for (const complexd& ev : r.eigenvalues) {
        if (std::abs(ev.real()) >= tol) {
            r.gap = -ev.real();
            break;
        }
    }
    return r;
}

SpectrumResult sector_spectrum(const ModelParams& params, int N, double zero_tol) {
    const MatrixXcd L = build_liouvillian(params, N);
    SpectrumResult r;
    r.scale = max_row_sum(L);
    r.eigenvalues.reserve(static_cast<std::size_t>(N) * N);
    for (int pn = 0; pn < 2; ++pn) {
        for (int pm = 0; pm < 2; ++pm) {
            const auto idx = sector_vec_indices(N, pn, pm);
            const auto evs = zgeev_eigenvalues(select_block(L, idx));
            r.eigenvalues.insert(r.eigenvalues.end(), evs.begin(), evs.end());
        }
    }
    sort_by_descending_real(r.eigenvalues);
    const double tol = zero_tol * r.scale;
    for (const complexd& ev : r.eigenvalues) {
        if (std::abs(ev.real()) < tol) ++r.steady_count;
    }
    r.gap = 0.0;
    for (const complexd& ev : r.eigenvalues) {
        if (std::abs(ev.real()) >= tol) {
            r.gap = -ev.real();
            break;
        }
    }
    return r;
}

MatrixXcd steady_state_sector(const ModelParams& params, int N, int parity) {
    validate(params);
    if (params.eta <= 0.0) throw ValidationError("steady state requires eta > 0");
    const MatrixXcd L = build_liouvillian(params, N);
    const auto idx = sector_vec_indices(N, parity, parity);
    MatrixXcd B = select_block(L, idx);
    // replace the first row by the sector trace functional and solve B x = e0
    VectorXcd rhs = VectorXcd::Zero(B.rows());
    rhs(0) = 1.0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
        const int nn = idx[j] % N;
        const int mm = idx[j] / N;
        B(0, j) = (nn == mm) ? 1.0 : 0.0;
    }
    const VectorXcd x = B.partialPivLu().solve(rhs);
    if (!x.allFinite()) throw EigensolveFailed("steady-state solve produced non-finite values");
    MatrixXcd rho = MatrixXcd::Zero(N, N);
    for (std::size_t j = 0; j < idx.size(); ++j) {
        rho(idx[j] % N, idx[j] / N) = x(j);
    }
    return rho;
}

MatrixXcd steady_state(const ModelParams& params, int N) {
    return 0.5 * (steady_state_sector(params, N, 0) + steady_state_sector(params, N, 1));
}

int adaptive_truncation(const ModelParams& params) {
    double n0 = 1.0;
    try {
        n0 = std::max(1.0, fixed_points(params).n0);
    } catch (const NoBistability&) {
        n0 = std::max(1.0, params.G / params.kappa2_modulus());
    }
    return static_cast<int>(std::ceil(n0 + 8.0 * std::sqrt(n0) + 10.0));
}

RateEstimate liouvillian_gap(const ModelParams& params, int N, const GapOptions& opts) {
    validate(params);
    if (params.eta <= 0.0) {
        throw ValidationError("the numeric-gap path requires eta > 0 (unique steady sector)");
    }
    // truncation diagnostic from both charge-sector steady states
    double td = 0.0;
    for (int parity = 0; parity < 2; ++parity) {
        const MatrixXcd rho = steady_state_sector(params, N, parity);
        const int k = top_diagonal_index(N, parity);
        td = std::max(td, std::abs(rho(k, k).real()));
    }
    if (td > opts.truncation_tol) {
        throw TruncationLeak("steady-state weight " + std::to_string(td) +
                             " at the top Fock level; increase N");
    }

    const SpectrumResult sr = sector_spectrum(params, N, opts.zero_tol);
    // two exact charge-sector zeros always lead; the switching mode is next
    const double cand = -sr.eigenvalues[2].real();
    const double tol = opts.zero_tol * sr.scale;

    RateEstimate r;
    if (cand < tol) {
        r = RateEstimate::from_value(0.0, RateMethod::NumericGap);  // degenerate dark space
    } else {
        r = RateEstimate::from_value(cand, RateMethod::NumericGap);
    }
    r.metadata["N"] = double(N);
    r.metadata["truncation_diag"] = td;
    r.metadata["steady_count"] = double(sr.steady_count);
    return r;
}

RateEstimate liouvillian_gap(const ModelParams& params) {
    return liouvillian_gap(params, adaptive_truncation(params));
}

} // namespace kerrcat
