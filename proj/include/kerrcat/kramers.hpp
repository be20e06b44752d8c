// Closed-form switching-rate theory in the complex P-representation: the
// stationary potential, its five extrema, Hessians, the Eyring-Kramers rate,
// the potential-barrier rate B exp(-delta_Phi) and its asymptotic limits, the
// near-critical effective 1D potential, and the critical Kerr-to-dissipation
// ratio.
//
// All rates are evaluated in log space; see RateEstimate.

#pragma once

#include <array>

#include "kerrcat/model.hpp"
#include "kerrcat/rate.hpp"

namespace kerrcat {

// Stationary potential Phi(alpha, beta) of the Fokker-Planck flow,
//   Phi = -2 alpha beta + (1 + i Delta/kappa2)       Log(alpha^2 - G/kappa2)
//                       + (1 - i Delta/kappa2*) Log(beta^2  - G/kappa2*).
// Principal-branch logs; the beta-term argument is biased to the lower edge
// of the cut (Im -> -0) when it lands exactly on the negative real axis, so
// that Phi(alpha, alpha*) is real and continuous in the U -> 0+ limit.
// Throws PotentialSingularity at the log singularities.
complexd potential(const ModelParams& params, complexd alpha, complexd beta);

struct PotentialExtrema {
    complexd alpha_cl;       // classical pair (+-alpha_cl, +-alpha_cl*)
    complexd alpha_q;        // quantum pair (+-alpha_q, -+alpha_q*)
    double theta_cl = 0.0;
    double theta_q = 0.0;
    bool quantum_pair_exists = false;  // |alpha_q|^2 radicand was positive
};

PotentialExtrema extrema(const ModelParams& params);

// Hessian of Phi in (alpha, beta); off-diagonals are exactly -2.
// Entries ordered row-major [d2/da2, d2/dadb, d2/dbda, d2/db2].
std::array<complexd, 4> hessian(const ModelParams& params, complexd alpha, complexd beta);

struct KramersBreakdown {
    double phi_saddle = 0.0;                    // Phi(0,0)
    std::array<double, 3> phi_cl_parts{};       // Phi_1, Phi_2, Phi_3
    double exponent = 0.0;                      // Phi(alpha_cl) - Phi(0,0)
    double delta_phi = 0.0;                     // barrier height of the approximation
    double prefactor_B = 0.0;
    double lambda1_saddle = 0.0;                // negative Hessian eigenvalue at 0
    double lambda2_saddle = 0.0;
    double det_saddle = 0.0;
    double det_cl = 0.0;
    double rate_full = 0.0;
    double rate_barrier = 0.0;
};

// Full Eyring-Kramers rate,
//   Gamma = D0 |Lambda_1(0,0)|/(2 pi) sqrt(det H(alpha_cl)/|det H(0,0)|)
//           * exp(Phi(alpha_cl) - Phi(0,0)),   D0 = G,
// with every piece from its closed form. Throws NoBistability outside
// |Delta| < G and NegativeDeterminantRatio when the saddle Hessian loses its
// (+,-) signature (G^2 - (Delta+U)^2 - eta^2 <= 0).
RateEstimate rate_full(const ModelParams& params, KramersBreakdown* breakdown = nullptr);

// Potential-barrier approximation Gamma = B exp(-delta_Phi). Nominal validity
// |Delta| >> |kappa2| (flagged, not enforced); requires |Delta| < G.
RateEstimate rate_barrier(const ModelParams& params, KramersBreakdown* breakdown = nullptr);

// Barrier height delta_Phi alone (used by the critical-ratio search).
double barrier_height(const ModelParams& params);

// Small-detuning law Gamma = (4 Delta^2/|kappa2|) exp(-2G/|kappa2|).
RateEstimate rate_small_detuning(const ModelParams& params);

// Near-critical asymptotics (U = 0 path),
//   Gamma = (2/pi) sqrt(2G(G-Delta)) exp(-4 sqrt2 (G-Delta)^{3/2}/(3 eta sqrt G)).
RateEstimate rate_near_critical(const ModelParams& params);

// Effective 1D description near the critical point:
//   V(x) = ((Delta-G)/2) x^2 + (eta^2/48G) x^6,  m = 1/(2G),  T_eff = G/2.
struct EffectivePotential {
    double m = 0.0;
    double T_eff = 0.0;
    double x0 = 0.0;       // well position, (8G(G-Delta)/eta^2)^{1/4}
    double omega0 = 0.0;   // sqrt(|V''(0)|/m)
    double barrier_over_T = 0.0;  // |V(x0)|/T_eff
    double quad_coeff = 0.0;      // (Delta-G)/2
    double sext_coeff = 0.0;      // eta^2/(48 G)

    double V(double x) const {
        const double x2 = x * x;
        return quad_coeff * x2 + sext_coeff * x2 * x2 * x2;
    }
    double dV(double x) const {
        const double x2 = x * x;
        return 2.0 * quad_coeff * x + 6.0 * sext_coeff * x2 * x2 * x;
    }
};

EffectivePotential wigner_effective_potential(const ModelParams& params);
double effective_potential_value(const ModelParams& params, double x);

// Critical ratio (U/eta)_c at fixed |kappa2| (closed form),
//   tan[(2/pi)(sqrt(ln^2(G/(e k2)) + pi^2/2) - ln(G/(e k2)))].
double critical_ratio_closed_form(double G, double kappa2_mod);

// Same quantity from its defining property: the sign change of
// d(delta_Phi)/d Delta at Delta = |kappa2|, found by bisection in U/eta.
double critical_ratio_barrier_derivative(double G, double kappa2_mod);

// Minimal rate in the large-Kerr limit, Gamma ~ (2G/pi) exp(-4G/U), together
// with the reported optimal detuning Delta_opt ~ G + |kappa2| (metadata).
RateEstimate rate_min_large_kerr(const ModelParams& params);

} // namespace kerrcat
