// Exception types shared across the library. One class per failure mode so
// callers (and tests) can catch precisely.

#pragma once

#include <stdexcept>
#include <string>

namespace kerrcat {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// model-core
struct NonPositivePump : Error { using Error::Error; };
struct NegativeRate : Error { using Error::Error; };

// semiclassical
struct NoBistability : Error { using Error::Error; };
struct NonFinite : Error { using Error::Error; };

// liouvillian-numeric
struct TruncationTooSmall : Error { using Error::Error; };
struct TruncationLeak : Error { using Error::Error; };
struct EigensolveFailed : Error { using Error::Error; };

// kramers-analytic
struct PotentialSingularity : Error { using Error::Error; };
struct NegativeDeterminantRatio : Error { using Error::Error; };

// wigner-phase-space
struct EtaZero : Error { using Error::Error; };
struct MaxTermsExceeded : Error { using Error::Error; };
struct LowerParameterPole : Error { using Error::Error; };

// langevin-mc
struct AllCensored : Error { using Error::Error; };

// cli-sweeps
struct ValidationError : Error { using Error::Error; };
struct PredicateNotBracketed : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

} // namespace kerrcat
