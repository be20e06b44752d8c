#include "kerrcat/semiclassical.hpp"

#include <array>
#include <cmath>

namespace kerrcat {

namespace {

// radicand of the nontrivial fixed-point equation, G^2 |kappa2|^2 - Delta^2 eta^2
double fp_radicand(const ModelParams& p) {
    const double m2 = p.eta * p.eta + p.U * p.U;
    return p.G * p.G * m2 - p.Delta * p.Delta * p.eta * p.eta;
}

std::pair<complexd, complexd> eig2(const std::array<complexd, 4>& j) {
    // eigenvalues of [[a,b],[c,d]]
    const complexd tr = j[0] + j[3];
    const complexd det = j[0] * j[3] - j[1] * j[2];
    const complexd disc = std::sqrt(tr * tr - 4.0 * det);
    return {0.5 * (tr + disc), 0.5 * (tr - disc)};
}

} // namespace

std::array<complexd, 4> amplitude_jacobian(const ModelParams& p, complexd a, complexd b) {
    const complexd k2 = p.kappa2();
    const complexd k2c = std::conj(k2);
    const complexd i{0.0, 1.0};
    return {i * p.Delta - 2.0 * a * b * k2, p.G - a * a * k2,
            p.G - b * b * k2c, -i * p.Delta - 2.0 * a * b * k2c};
}

FixedPointSet fixed_points(const ModelParams& params) {
    validate(params);
    FixedPointSet fp;

    const double G = params.G, D = params.Delta;
    const double sg = std::sqrt(G * G - D * D > 0 ? G * G - D * D : D * D - G * G);
    if (std::abs(D) < G) {
        fp.saddle_eigs = {complexd{sg, 0}, complexd{-sg, 0}};
        fp.saddle_class = SaddleClass::Saddle;
    } else {
        fp.saddle_eigs = {complexd{0, sg}, complexd{0, -sg}};
        fp.saddle_class = SaddleClass::Center;
    }

    const double rad = fp_radicand(params);
    if (rad < 0.0) throw NoBistability("fixed-point radicand negative");
    const double m2 = params.eta * params.eta + params.U * params.U;
    const double R = std::sqrt(rad);
    fp.n0 = (R + D * params.U) / m2;
    if (fp.n0 <= 0.0) throw NoBistability("n0 <= 0, only the trivial point exists");

    // principal half of exp(i 2 theta0) = (R + i Delta eta) / (G kappa2)
    const complexd phase = complexd{R, D * params.eta} / (G * params.kappa2());
    fp.theta0 = 0.5 * std::arg(phase);
    fp.alpha0 = std::sqrt(fp.n0) * std::polar(1.0, fp.theta0);

    // Lambda_{1,2} = -2 n0 (eta +- i U sqrt(1 - Delta/(U n0))).
    // At U = 0 the closed form is a 0*inf limit; use the Jacobian eigensolve.
    if (params.U == 0.0) {
        const auto j = amplitude_jacobian(params, fp.alpha0, std::conj(fp.alpha0));
        fp.nontrivial_eigs = eig2(j);
        const double im = std::abs(fp.nontrivial_eigs.first.imag());
        fp.nontrivial_class = im > 1e-12 * std::abs(fp.nontrivial_eigs.first)
                                  ? NontrivialClass::Focus
                                  : NontrivialClass::Node;
    } else {
        const double inner = 1.0 - D / (params.U * fp.n0);
        const complexd root = std::sqrt(complexd{inner, 0.0});
        const complexd i{0.0, 1.0};
        fp.nontrivial_eigs = {-2.0 * fp.n0 * (params.eta + i * params.U * root),
                              -2.0 * fp.n0 * (params.eta - i * params.U * root)};
        fp.nontrivial_class = inner > 0.0 ? NontrivialClass::Focus : NontrivialClass::Node;
    }
    return fp;
}

QuadratureState drift(const ModelParams& params, const QuadratureState& s) {
    const double r2 = s.x * s.x + s.p * s.p;
    return {params.G * s.x - params.Delta * s.p - 0.5 * r2 * (params.eta * s.x - params.U * s.p),
            params.Delta * s.x - params.G * s.p - 0.5 * r2 * (params.eta * s.p + params.U * s.x)};
}

Stability stability_at(const ModelParams& params, StabilityPoint point) {
    validate(params);
    Stability st;
    if (point == StabilityPoint::Origin) {
        const double G = params.G, D = params.Delta;
        if (std::abs(D) < G) {
            const double s = std::sqrt(G * G - D * D);
            st.eigs = {complexd{s, 0}, complexd{-s, 0}};
            st.saddle_class = SaddleClass::Saddle;
        } else {
            const double s = std::sqrt(D * D - G * G);
            st.eigs = {complexd{0, s}, complexd{0, -s}};
            st.saddle_class = SaddleClass::Center;
        }
        return st;
    }
    const FixedPointSet fp = fixed_points(params);  // throws NoBistability if absent
    st.eigs = fp.nontrivial_eigs;
    st.nontrivial_class = fp.nontrivial_class;
    return st;
}

std::vector<QuadratureState> integrate_trajectory(const ModelParams& params, QuadratureState s0,
                                                  double dt, int n_steps) {
    validate(params);
    if (!(dt > 0.0) || n_steps < 1) throw ValidationError("dt > 0 and n_steps >= 1 required");
    std::vector<QuadratureState> out;
    out.reserve(static_cast<std::size_t>(n_steps) + 1);
    out.push_back(s0);
    QuadratureState s = s0;
    for (int i = 0; i < n_steps; ++i) {
        const QuadratureState k1 = drift(params, s);
        const QuadratureState k2 = drift(params, {s.x + 0.5 * dt * k1.x, s.p + 0.5 * dt * k1.p});
        const QuadratureState k3 = drift(params, {s.x + 0.5 * dt * k2.x, s.p + 0.5 * dt * k2.p});
        const QuadratureState k4 = drift(params, {s.x + dt * k3.x, s.p + dt * k3.p});
        s.x += dt / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
        s.p += dt / 6.0 * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p);
        if (!std::isfinite(s.x) || !std::isfinite(s.p)) {
            throw NonFinite("trajectory diverged at step " + std::to_string(i) +
                            "; reduce dt");
        }
        out.push_back(s);
    }
    return out;
}

PhaseSpaceGrid vector_field_grid(const ModelParams& params, const GridSpec& spec) {
    validate(params);
    if (spec.nx < 1 || spec.np < 1) throw ValidationError("grid needs at least one node per axis");
    PhaseSpaceGrid g;
    g.params = params;
    g.x_axis = linspace(spec.x_min, spec.x_max, spec.nx);
    g.p_axis = linspace(spec.p_min, spec.p_max, spec.np);
    g.vectors.reserve(spec.nx * spec.np);
    for (double p : g.p_axis) {
        for (double x : g.x_axis) {
            const QuadratureState d = drift(params, {x, p});
            g.vectors.emplace_back(d.x, d.p);
        }
    }
    return g;
}

} // namespace kerrcat
