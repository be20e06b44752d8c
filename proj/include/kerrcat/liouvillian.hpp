// Lindbladian superoperator on a truncated Fock basis and its spectrum. The
// gap Gamma = -Re(lambda_1) is the numerical ground truth every analytic rate
// is checked against.
//
// Vectorization is column-stacking throughout: vec(A X B) = (B^T kron A) vec(X),
// so rho[n,m] sits at vec index n + N*m.

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "kerrcat/model.hpp"
#include "kerrcat/rate.hpp"

namespace kerrcat {

using MatrixXcd = Eigen::MatrixXcd;
using VectorXcd = Eigen::VectorXcd;

// Annihilation operator on |0..N-1>, a[n-1, n] = sqrt(n).
MatrixXcd annihilation_operator(int N);

// H = -Delta a^dag a + (U/2) a^dag a^dag a a + (i G/2)(a^dag^2 - a^2); Hermitian.
MatrixXcd build_hamiltonian(const ModelParams& params, int N);

// L vec(rho) = vec(-i[H, rho] + (eta/2)(2 a^2 rho a^dag^2 - a^dag^2 a^2 rho - rho a^dag^2 a^2)).
MatrixXcd build_liouvillian(const ModelParams& params, int N);

// Two blocks by the parity of n+m (even first). Every term of L changes n+m
// by an even amount, so the union of the block spectra is the full spectrum.
struct ParityBlocks {
    MatrixXcd even;  // (n+m) even
    MatrixXcd odd;
    std::vector<int> even_indices;  // vec indices selected into each block
    std::vector<int> odd_indices;
};
ParityBlocks parity_blocks(const MatrixXcd& superop, int N);

struct SpectrumResult {
    std::vector<complexd> eigenvalues;  // sorted by descending real part
    int steady_count = 0;               // |Re| < zero_tol * scale
    double gap = 0.0;                   // -Re of the slowest eigenvalue past the steady ones
    double scale = 0.0;                 // max row sum of the matrix
    double truncation_diag = 0.0;       // top-level steady-state occupation (gap path only)
};

// Dense eigensolve of the full non-Hermitian matrix (LAPACK zgeev).
// zero_tol is relative to scale. Throws EigensolveFailed on non-convergence.
SpectrumResult spectrum(const MatrixXcd& superop, double zero_tol = 1e-12);

// Steady states. The strong Z2 symmetry (parity commutes with H and a^2)
// conserves Tr(P rho), so each photon-parity charge sector carries exactly one
// steady state; rho reachable from vacuum is the even one. Returns the
// trace-one steady state of the requested charge sector.
MatrixXcd steady_state_sector(const ModelParams& params, int N, int parity /*0 even, 1 odd*/);

// Equal mixture of the two charge-sector steady states.
MatrixXcd steady_state(const ModelParams& params, int N);

// Fock truncation heuristic: N = ceil(n0 + 8 sqrt(n0) + 10).
int adaptive_truncation(const ModelParams& params);

struct GapOptions {
    double zero_tol = 1e-12;
    double truncation_tol = 1e-8;
};

// Switching rate from the Liouvillian spectrum. Eigensolves run per
// strong-symmetry sector ((n%2, m%2)), which is exact and ~16x faster than
// the full matrix. The two charge-sector zeros are always present; the gap is
// -Re of the next eigenvalue, reported as 0 when it is within tolerance of
// zero (the Delta = 0 dark space). Throws TruncationLeak when the steady
// state occupies the top Fock level above truncation_tol.
RateEstimate liouvillian_gap(const ModelParams& params, int N, const GapOptions& opts = {});
RateEstimate liouvillian_gap(const ModelParams& params);  // adaptive N

// Full sorted spectrum assembled from the four strong-symmetry sectors
// (same eigenvalues as spectrum(build_liouvillian(...)), much faster).
SpectrumResult sector_spectrum(const ModelParams& params, int N, double zero_tol = 1e-12);

} // namespace kerrcat
