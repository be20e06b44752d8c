// Mean-field amplitude equation: fixed points, quadrature flow, stability
// spectra and trajectory integration.
//
// The amplitude obeys  d(alpha)/dt = i Delta alpha + G alpha* - kappa2 |alpha|^2 alpha,
// written in quadratures x = sqrt(2) Re alpha, p = sqrt(2) Im alpha.

#pragma once

#include <array>
#include <utility>
#include <vector>

#include "kerrcat/model.hpp"
#include "kerrcat/phase_space.hpp"

namespace kerrcat {

struct QuadratureState {
    double x = 0.0;
    double p = 0.0;
};

struct FixedPointSet {
    double n0 = 0.0;              // average photon number of the nontrivial pair
    double theta0 = 0.0;          // phase, principal half-argument
    complexd alpha0;              // sqrt(n0) exp(i theta0); the pair is +-alpha0
    std::pair<complexd, complexd> saddle_eigs;      // at the origin
    std::pair<complexd, complexd> nontrivial_eigs;  // Lambda_{1,2} at +-alpha0
    SaddleClass saddle_class = SaddleClass::Saddle;
    NontrivialClass nontrivial_class = NontrivialClass::Absent;
};

// Nontrivial fixed points and both stability spectra. Throws NoBistability
// when only the trivial point exists (radicand < 0 or n0 <= 0); the origin
// spectrum is still available through stability_at.
FixedPointSet fixed_points(const ModelParams& params);

// Time derivative (x', p') of the quadrature flow.
QuadratureState drift(const ModelParams& params, const QuadratureState& s);

enum class StabilityPoint { Origin, Nontrivial };

struct Stability {
    std::pair<complexd, complexd> eigs;
    SaddleClass saddle_class = SaddleClass::Saddle;          // meaningful for Origin
    NontrivialClass nontrivial_class = NontrivialClass::Absent; // meaningful for Nontrivial
};

Stability stability_at(const ModelParams& params, StabilityPoint point);

// Jacobian of the (alpha, beta=alpha*) flow at a general point; export for
// tests that cross-check the closed-form eigenvalues.
// Rows/cols ordered (alpha, beta).
std::array<complexd, 4> amplitude_jacobian(const ModelParams& params, complexd alpha, complexd beta);

// Fixed-step classical 4th-order integration of the quadrature flow. Throws
// NonFinite if the trajectory leaves the finite range (dt too large).
std::vector<QuadratureState> integrate_trajectory(const ModelParams& params, QuadratureState s0,
                                                  double dt, int n_steps);

// Drift sampled on a rectangular grid (Fig. 1a-style data).
PhaseSpaceGrid vector_field_grid(const ModelParams& params, const GridSpec& spec);

} // namespace kerrcat
