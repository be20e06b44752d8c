#include "kerrcat/model.hpp"

#include "kerrcat/semiclassical.hpp"

namespace kerrcat {

ModelParams validate(const ModelParams& params) {
    if (!(params.G > 0.0)) {
        throw NonPositivePump("G must be positive, got " + std::to_string(params.G));
    }
    if (params.eta < 0.0 || params.U < 0.0) {
        throw NegativeRate("eta and U must be non-negative, got eta=" +
                           std::to_string(params.eta) + " U=" + std::to_string(params.U));
    }
    if (params.eta == 0.0 && params.U == 0.0) {
        throw NegativeRate("eta and U cannot both be zero (kappa2 = 0)");
    }
    if (!std::isfinite(params.G) || !std::isfinite(params.Delta) ||
        !std::isfinite(params.eta) || !std::isfinite(params.U)) {
        throw ValidationError("parameters must be finite");
    }
    return params;
}

Regime classify_regime(const ModelParams& params, double near_critical_fraction) {
    validate(params);
    if (!(near_critical_fraction > 0.0 && near_critical_fraction < 1.0)) {
        throw ValidationError("near_critical_fraction must be in (0, 1)");
    }
    Regime r;
    const double ad = std::abs(params.Delta);
    const double k2 = params.kappa2_modulus();
    r.bistable = ad < params.G;
    r.saddle_class = r.bistable ? SaddleClass::Saddle : SaddleClass::Center;

    if (r.bistable && (params.G - ad) / params.G < near_critical_fraction) {
        r.detuning_class = DetuningClass::NearCritical;
    } else if (ad < k2) {
        r.detuning_class = DetuningClass::Small;
    } else {
        r.detuning_class = DetuningClass::Barrier;
    }

    r.nontrivial_class = NontrivialClass::Absent;
    try {
        const FixedPointSet fp = fixed_points(params);
        r.nontrivial_class = fp.nontrivial_class;
    } catch (const NoBistability&) {
        // only the trivial point exists
    }
    return r;
}

} // namespace kerrcat
