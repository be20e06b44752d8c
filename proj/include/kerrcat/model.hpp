// Physical parameter set, derived constants and regime classification shared
// by every other module.
//
// The four rates (G, Delta, eta, U) are dimensionless multiples of a
// reference rate; no unit handling anywhere. kappa2 = eta + i U is always
// derived, never stored.

#pragma once

#include <cmath>
#include <complex>

#include "kerrcat/errors.hpp"

namespace kerrcat {

using complexd = std::complex<double>;

struct ModelParams {
    double G = 0.0;      // two-photon pump rate, > 0
    double Delta = 0.0;  // detuning omega_p - omega_c, any sign
    double eta = 0.0;    // two-photon dissipation rate, >= 0
    double U = 0.0;      // Kerr nonlinearity, >= 0 in v1

    complexd kappa2() const { return {eta, U}; }
    double kappa2_modulus() const { return std::hypot(eta, U); }
    // theta = arctan(U/eta); pi/2 at eta = 0
    double kappa2_phase() const { return std::atan2(U, eta); }

    // G/kappa2 and G/kappa2*, built component-wise so the imaginary part
    // keeps the sign of the U -> 0+ limit (matters for the log branch in the
    // P-representation potential).
    complexd g_over_kappa2() const {
        const double m2 = eta * eta + U * U;
        return {G * eta / m2, -(G * U) / m2};
    }
    complexd g_over_kappa2_conj() const {
        const double m2 = eta * eta + U * U;
        return {G * eta / m2, +(G * U) / m2};
    }
};

// Constructs eta, U from a fixed modulus and angle theta = arctan(U/eta).
inline ModelParams params_from_theta(double G, double Delta, double kappa2_mod, double theta) {
    return ModelParams{G, Delta, kappa2_mod * std::cos(theta), kappa2_mod * std::sin(theta)};
}

enum class DetuningClass { Small, Barrier, NearCritical };
enum class SaddleClass { Saddle, Center };
enum class NontrivialClass { Focus, Node, Absent };

struct Regime {
    bool bistable = false;               // |Delta| < G
    DetuningClass detuning_class = DetuningClass::Small;
    SaddleClass saddle_class = SaddleClass::Saddle;
    NontrivialClass nontrivial_class = NontrivialClass::Absent;
};

// Throws if the parameter constraints are violated; returns params unchanged.
ModelParams validate(const ModelParams& params);

// Regime flags. near_critical_fraction is the (G-|Delta|)/G threshold below
// which the point counts as near-critical; must be in (0, 1).
Regime classify_regime(const ModelParams& params, double near_critical_fraction = 0.05);

} // namespace kerrcat
