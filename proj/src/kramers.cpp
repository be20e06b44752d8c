#include "kerrcat/kramers.hpp"

#include <cmath>

namespace kerrcat {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Derived {
    double m2;  // eta^2 + U^2
    double R;   // sqrt(G^2 m2 - Delta^2 eta^2)
    double n0;  // (R + Delta U)/m2
};

Derived derived(const ModelParams& p) {
    const double m2 = p.eta * p.eta + p.U * p.U;
    const double rad = p.G * p.G * m2 - p.Delta * p.Delta * p.eta * p.eta;
    if (rad < 0.0) throw NoBistability("radicand negative, nontrivial extrema absent");
    const double R = std::sqrt(rad);
    return {m2, R, (R + p.Delta * p.U) / m2};
}

// arctan of R/(Delta eta), odd in Delta; 0 contribution at Delta = 0 is
// handled by the callers (the prefactor vanishes). Plain odd arctan keeps
// delta_Phi even in Delta at U = 0; atan2 would not.
double arctan_ratio(double num, double den) { return std::atan(num / den); }

double phi00_closed(const ModelParams& p) {
    const Derived d = derived(p);
    return (1.0 + p.Delta * p.U / d.m2) * std::log(p.G * p.G / d.m2) +
           (2.0 * p.Delta * p.eta / d.m2) * std::atan2(p.U, p.eta);
}

std::array<double, 3> phicl_parts(const ModelParams& p) {
    const Derived d = derived(p);
    const double c = 2.0 * p.Delta * p.eta / d.m2;
    const double phi1 = -2.0 * d.n0 - 2.0;
    double phi2 = 2.0 * c * std::atan2(p.U, p.eta) + c * arctan_ratio(p.eta, p.Delta + p.U);
    if (p.Delta != 0.0) phi2 += c * arctan_ratio(d.R, p.Delta * p.eta);
    const double phi3 = (1.0 + p.Delta * p.U / d.m2) *
                        std::log((p.eta * p.eta + (p.Delta + p.U) * (p.Delta + p.U)) / d.m2);
    return {phi1, phi2, phi3};
}

} // namespace

complexd potential(const ModelParams& params, complexd alpha, complexd beta) {
    validate(params);
    const complexd k2 = params.kappa2();
    const complexd qa = 1.0 + complexd{0.0, 1.0} * params.Delta / k2;
    const complexd qb = 1.0 - complexd{0.0, 1.0} * params.Delta / std::conj(k2);
    complexd w1 = alpha * alpha - params.g_over_kappa2();
    complexd w2 = beta * beta - params.g_over_kappa2_conj();
    if (std::abs(w1) < 1e-14 || std::abs(w2) < 1e-14) {
        throw PotentialSingularity("alpha^2 = G/kappa2 or beta^2 = G/kappa2*");
    }
    // keep the two logs on conjugate branches when the arguments are exactly
    // real (U = 0): alpha-term upper edge, beta-term lower edge
    if (w1.imag() == 0.0) w1 = {w1.real(), +0.0};
    if (w2.imag() == 0.0) w2 = {w2.real(), -0.0};
    return -2.0 * alpha * beta + qa * std::log(w1) + qb * std::log(w2);
}

PotentialExtrema extrema(const ModelParams& params) {
    validate(params);
    const Derived d = derived(params);
    PotentialExtrema e;

    const double mod2_cl = d.n0 + 1.0;
    const complexd ph_cl = complexd{d.R, params.eta * params.Delta} / (params.G * params.kappa2());
    e.theta_cl = 0.5 * std::arg(ph_cl);
    e.alpha_cl = std::sqrt(mod2_cl) * std::polar(1.0, e.theta_cl);

    const double mod2_q = (d.R - params.U * params.Delta) / d.m2 - 1.0;
    const complexd ph_q = complexd{d.R, -params.eta * params.Delta} / (params.G * params.kappa2());
    e.theta_q = 0.5 * std::arg(ph_q);
    e.quantum_pair_exists = mod2_q > 0.0;
    if (e.quantum_pair_exists) {
        e.alpha_q = std::sqrt(mod2_q) * std::polar(1.0, e.theta_q);
    }
    return e;
}

std::array<complexd, 4> hessian(const ModelParams& params, complexd alpha, complexd beta) {
    validate(params);
    const complexd k2 = params.kappa2();
    const complexd k2c = std::conj(k2);
    const complexd i{0.0, 1.0};
    const complexd da = params.G - k2 * alpha * alpha;
    const complexd db = params.G - k2c * beta * beta;
    if (std::abs(da) < 1e-14 || std::abs(db) < 1e-14) {
        throw PotentialSingularity("Hessian evaluated at a log singularity");
    }
    const complexd h11 = -2.0 * i * (params.Delta - i * k2) * (params.G + k2 * alpha * alpha) / (da * da);
    const complexd h22 = 2.0 * i * (params.Delta + i * k2c) * (params.G + k2c * beta * beta) / (db * db);
    return {h11, complexd{-2.0, 0.0}, complexd{-2.0, 0.0}, h22};
}

RateEstimate rate_full(const ModelParams& params, KramersBreakdown* breakdown) {
    validate(params);
    if (!(std::abs(params.Delta) < params.G)) throw NoBistability("|Delta| >= G");
    const Derived d = derived(params);
    const double G = params.G;
    const double du = params.Delta + params.U;

    const double sad = G * G - du * du;
    if (sad < 0.0) throw NegativeDeterminantRatio("G^2 - (Delta+U)^2 < 0");
    const double lam1 = -2.0 * (std::sqrt(sad) + params.eta) / G;
    const double lam2 = 2.0 * (std::sqrt(sad) - params.eta) / G;
    const double det0 = -4.0 * (sad - params.eta * params.eta) / (G * G);
    if (det0 >= 0.0) {
        throw NegativeDeterminantRatio("saddle Hessian signature lost: G^2-(Delta+U)^2-eta^2 <= 0");
    }
    const double detcl = 16.0 * d.R / d.m2 * (d.R + params.Delta * params.U + d.m2) /
                         (params.eta * params.eta + du * du);
    if (detcl <= 0.0) throw NegativeDeterminantRatio("classical-point Hessian determinant <= 0");

    const auto parts = phicl_parts(params);
    const double phi00 = phi00_closed(params);
    const double expo = parts[0] + parts[1] + parts[2] - phi00;
    const double logpref =
        std::log(G * std::abs(lam1) / (2.0 * kPi)) + 0.5 * (std::log(detcl) - std::log(-det0));

    RateEstimate r = RateEstimate::from_log(logpref + expo, RateMethod::KramersFull);
    const Regime reg = classify_regime(params);
    r.valid = reg.bistable;
    if (!r.valid) r.validity_note = "outside bistable region";

    if (breakdown) {
        breakdown->phi_saddle = phi00;
        breakdown->phi_cl_parts = parts;
        breakdown->exponent = expo;
        breakdown->lambda1_saddle = lam1;
        breakdown->lambda2_saddle = lam2;
        breakdown->det_saddle = det0;
        breakdown->det_cl = detcl;
        breakdown->rate_full = r.value;
    }
    return r;
}

double barrier_height(const ModelParams& params) {
    const Derived d = derived(params);
    double t2 = 0.0, t3 = 0.0;
    if (params.Delta != 0.0) {
        const double c = 2.0 * params.Delta * params.eta / d.m2;
        t2 = c * (arctan_ratio(d.R, params.Delta * params.eta) + std::atan2(params.U, params.eta));
        t3 = (2.0 * params.Delta * params.U / d.m2) * std::log(std::abs(params.Delta) / params.G);
    }
    return 2.0 * d.n0 - t2 - t3;
}

RateEstimate rate_barrier(const ModelParams& params, KramersBreakdown* breakdown) {
    validate(params);
    if (!(std::abs(params.Delta) < params.G)) throw NoBistability("|Delta| >= G");
    const Derived d = derived(params);

    const double dphi = barrier_height(params);
    RateEstimate r;
    if (params.Delta == 0.0) {
        // prefactor ~ |Delta| vanishes
        r = RateEstimate::from_value(0.0, RateMethod::KramersBarrier);
    } else {
        const double logB = std::log(2.0 / kPi) + std::log(std::abs(params.Delta) / params.G) +
                            0.25 * std::log(d.R * d.R) + 0.5 * std::log(d.n0);
        r = RateEstimate::from_log(logB - dphi, RateMethod::KramersBarrier);
    }
    const Regime reg = classify_regime(params);
    r.valid = reg.bistable && reg.detuning_class == DetuningClass::Barrier;
    if (!r.valid) {
        r.validity_note = !reg.bistable ? "outside bistable region"
                                        : "outside nominal domain |Delta| >> |kappa2|";
    }
    if (breakdown) {
        breakdown->delta_phi = dphi;
        breakdown->prefactor_B = params.Delta == 0.0 ? 0.0 : std::exp(r.log_value + dphi);
        breakdown->rate_barrier = r.value;
    }
    return r;
}

RateEstimate rate_small_detuning(const ModelParams& params) {
    validate(params);
    const double k2 = params.kappa2_modulus();
    RateEstimate r;
    if (params.Delta == 0.0) {
        r = RateEstimate::from_value(0.0, RateMethod::SmallDetuning);
    } else {
        r = RateEstimate::from_log(
            std::log(4.0 * params.Delta * params.Delta / k2) - 2.0 * params.G / k2,
            RateMethod::SmallDetuning);
    }
    r.valid = std::abs(params.Delta) < k2;
    if (!r.valid) r.validity_note = "outside nominal domain |Delta| << |kappa2|";
    return r;
}

RateEstimate rate_near_critical(const ModelParams& params) {
    validate(params);
    if (!(params.G - params.Delta > 0.0)) throw NoBistability("requires Delta < G");
    const double gd = params.G - params.Delta;
    const double lg = std::log(2.0 / kPi) + 0.5 * std::log(2.0 * params.G * gd) -
                      4.0 * std::sqrt(2.0) * std::pow(gd, 1.5) / (3.0 * params.eta * std::sqrt(params.G));
    RateEstimate r = RateEstimate::from_log(lg, RateMethod::NearCritical);
    const Regime reg = classify_regime(params);
    r.valid = params.U == 0.0 && reg.detuning_class == DetuningClass::NearCritical;
    if (!r.valid) {
        r.validity_note = params.U != 0.0 ? "derived on the U = 0 path"
                                          : "outside near-critical regime";
    }
    return r;
}

EffectivePotential wigner_effective_potential(const ModelParams& params) {
    validate(params);
    EffectivePotential ep;
    ep.m = 1.0 / (2.0 * params.G);
    ep.T_eff = 0.5 * params.G;
    ep.quad_coeff = 0.5 * (params.Delta - params.G);
    ep.sext_coeff = params.eta * params.eta / (48.0 * params.G);
    // below the critical point V is a double well with minima at +-x0;
    // above it (Delta >= G) the potential is single-welled and x0 collapses to 0
    ep.x0 = params.Delta < params.G
                ? std::pow(8.0 * params.G * (params.G - params.Delta) /
                               (params.eta * params.eta),
                           0.25)
                : 0.0;
    // V''(0) = Delta - G < 0 at the saddle; report the curvature magnitude
    ep.omega0 = std::sqrt(std::abs(params.Delta - params.G) / ep.m);
    ep.barrier_over_T = std::abs(ep.V(ep.x0)) / ep.T_eff;
    return ep;
}

double effective_potential_value(const ModelParams& params, double x) {
    return wigner_effective_potential(params).V(x);
}

double critical_ratio_closed_form(double G, double kappa2_mod) {
    if (!(G / kappa2_mod > 1.0)) throw ValidationError("requires G/|kappa2| > 1");
    const double L = std::log(G / (std::exp(1.0) * kappa2_mod));
    return std::tan((2.0 / kPi) * (std::sqrt(L * L + kPi * kPi / 2.0) - L));
}

double critical_ratio_barrier_derivative(double G, double kappa2_mod) {
    if (!(G / kappa2_mod > 1.0)) throw ValidationError("requires G/|kappa2| > 1");
    const double h = 1e-6 * kappa2_mod;
    auto slope = [&](double ratio) {
        const double th = std::atan(ratio);
        const ModelParams lo{G, kappa2_mod - h, kappa2_mod * std::cos(th), kappa2_mod * std::sin(th)};
        const ModelParams hi{G, kappa2_mod + h, kappa2_mod * std::cos(th), kappa2_mod * std::sin(th)};
        return (barrier_height(hi) - barrier_height(lo)) / (2.0 * h);
    };
    double lo = 0.1, hi = 20.0;
    double flo = slope(lo);
    if (flo * slope(hi) > 0.0) throw PredicateNotBracketed("d(delta_Phi)/d(Delta) does not change sign");
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (slope(mid) * flo > 0.0) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

RateEstimate rate_min_large_kerr(const ModelParams& params) {
    validate(params);
    if (!(params.U > 0.0)) throw ValidationError("requires U > 0");
    RateEstimate r = RateEstimate::from_log(
        std::log(2.0 * params.G / kPi) - 4.0 * params.G / params.U, RateMethod::MinLargeKerr);
    const double k2 = params.kappa2_modulus();
    r.metadata["Delta_opt"] = params.G + k2;
    r.valid = params.eta < 0.2 * params.U &&
              params.U / std::max(params.eta, 1e-300) <= (8.0 * kPi / 3.0) * (params.G / k2);
    if (!r.valid) r.validity_note = "requires eta << U and U/eta <~ (8 pi/3) G/|kappa2|";
    return r;
}

} // namespace kerrcat
