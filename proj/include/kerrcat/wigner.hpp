// Exact steady-state Wigner function of the two-photon driven/damped mode,
//
//   W(x,p) = (1/pi) |0F1(1/2 - i Delta/eta; (G/2 eta)(x - i p)^2)|^2
//                   / 1F2(1/2; 1/2 - i Delta/eta, 1/2 + i Delta/eta; G^2/eta^2)
//            * exp(-(x^2 + p^2)),
//
// normalized so that the integral over dx dp is 1 (the literature form with
// 2/pi is normalized over d^2 alpha = dx dp / 2).

#pragma once

#include "kerrcat/model.hpp"
#include "kerrcat/phase_space.hpp"

namespace kerrcat {

// Pointwise density; strictly positive. Throws EtaZero when eta = 0.
double wigner(const ModelParams& params, double x, double p);

// Grid evaluation; symmetric grids satisfy W(x,p) = W(-x,-p).
PhaseSpaceGrid wigner_grid(const ModelParams& params, const GridSpec& spec);

// Default extent used by the CLI: radius sqrt(2 (n0 + 1)) + 5.
double default_wigner_radius(const ModelParams& params);

} // namespace kerrcat
