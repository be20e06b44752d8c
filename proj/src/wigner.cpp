#include "kerrcat/wigner.hpp"

#include <cmath>

#include "kerrcat/hypergeometric.hpp"
#include "kerrcat/semiclassical.hpp"

namespace kerrcat {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct WignerContext {
    complexd b;       // 1/2 - i Delta/eta
    double norm;      // 1F2 normalization, real
    double g2eta;     // G/(2 eta)
};

WignerContext make_context(const ModelParams& p) {
    if (p.eta <= 0.0) throw EtaZero("Wigner formula requires eta > 0");
    WignerContext c;
    c.b = complexd{0.5, -p.Delta / p.eta};
    const double z = (p.G / p.eta) * (p.G / p.eta);
    const complexd denom = hyp1f2(complexd{0.5, 0.0}, c.b, std::conj(c.b), complexd{z, 0.0});
    // conjugate lower parameters and real argument: the sum is real
    if (std::abs(denom.imag()) > 1e-10 * std::abs(denom)) {
        throw Error("1F2 normalization has a spurious imaginary part");
    }
    c.norm = denom.real();
    c.g2eta = p.G / (2.0 * p.eta);
    return c;
}

double wigner_point(const WignerContext& c, double x, double p) {
    const complexd q{x, -p};
    const complexd f = hyp0f1(c.b, c.g2eta * q * q);
    return (1.0 / kPi) * std::norm(f) / c.norm * std::exp(-(x * x + p * p));
}

} // namespace

double wigner(const ModelParams& params, double x, double p) {
    validate(params);
    return wigner_point(make_context(params), x, p);
}

PhaseSpaceGrid wigner_grid(const ModelParams& params, const GridSpec& spec) {
    validate(params);
    if (spec.nx < 1 || spec.np < 1) throw ValidationError("grid needs at least one node per axis");
    const WignerContext c = make_context(params);
    PhaseSpaceGrid g;
    g.params = params;
    g.x_axis = linspace(spec.x_min, spec.x_max, spec.nx);
    g.p_axis = linspace(spec.p_min, spec.p_max, spec.np);
    g.values.reserve(spec.nx * spec.np);
    for (double pv : g.p_axis) {
        for (double xv : g.x_axis) {
            g.values.push_back(wigner_point(c, xv, pv));
        }
    }
    return g;
}

double default_wigner_radius(const ModelParams& params) {
    double n0 = 0.0;
    try {
        n0 = fixed_points(params).n0;
    } catch (const NoBistability&) {
        // vacuum-like steady state; keep the 5-vacuum-width margin
    }
    return std::sqrt(2.0 * (n0 + 1.0)) + 5.0;
}

} // namespace kerrcat
