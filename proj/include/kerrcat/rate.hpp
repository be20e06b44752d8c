// Rate estimates carry both the value and its log (barrier heights reach 50+,
// so the value may flush to zero while log_value stays finite), the method
// tag, and validity metadata.

#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace kerrcat {

enum class RateMethod {
    NumericGap,     // Liouvillian gap, -Re(lambda_1)
    KramersFull,    // Eyring-Kramers with the exact closed-form pieces
    KramersBarrier, // B exp(-delta_Phi), potential-barrier approximation
    SmallDetuning,  // 4 Delta^2/|kappa2| exp(-2G/|kappa2|)
    NearCritical,   // (2/pi) sqrt(2G(G-Delta)) exp(-4 sqrt2 (G-Delta)^{3/2}/(3 eta sqrt G))
    LangevinMc,     // first-passage Monte Carlo
    MinLargeKerr,   // (2G/pi) exp(-4G/U) at the optimal detuning, eta << U
};

// short tags used in CSV column names and JSON
inline const char* method_tag(RateMethod m) {
    switch (m) {
        case RateMethod::NumericGap: return "numeric";
        case RateMethod::KramersFull: return "full";
        case RateMethod::KramersBarrier: return "barrier";
        case RateMethod::SmallDetuning: return "small";
        case RateMethod::NearCritical: return "near_critical";
        case RateMethod::LangevinMc: return "langevin";
        case RateMethod::MinLargeKerr: return "min_large_kerr";
    }
    return "unknown";
}

struct RateEstimate {
    double value = 0.0;      // exp(log_value); may underflow to 0
    double log_value = -std::numeric_limits<double>::infinity();
    RateMethod method = RateMethod::KramersBarrier;
    bool valid = true;               // nominal validity of the formula's regime
    std::string validity_note;       // empty when valid
    std::map<std::string, double> metadata;  // N, seed, truncation_diag, ...

    static RateEstimate from_log(double lg, RateMethod m) {
        RateEstimate r;
        r.log_value = lg;
        r.value = std::exp(lg);
        r.method = m;
        return r;
    }
    static RateEstimate from_value(double v, RateMethod m) {
        RateEstimate r;
        r.value = v;
        r.log_value = v > 0 ? std::log(v) : -std::numeric_limits<double>::infinity();
        r.method = m;
        return r;
    }
};

} // namespace kerrcat
