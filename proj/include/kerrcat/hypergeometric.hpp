// Generalized hypergeometric series 0F1 and 1F2 with complex parameters and
// argument, by direct power-series summation. Both functions are entire in z,
// so the series always converges; terms peak near k ~ sqrt|z| and then decay
// factorially.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "kerrcat/errors.hpp"

namespace kerrcat {

using complexd = std::complex<double>;

enum class HypKind { Hyp0F1, Hyp1F2 };

struct HypergeometricSpec {
    HypKind kind = HypKind::Hyp0F1;
    std::vector<complexd> upper;  // size 0 for 0F1, 1 for 1F2
    std::vector<complexd> lower;  // size 1 for 0F1, 2 for 1F2
    complexd argument;
};

struct SeriesOptions {
    double eps = 1e-14;          // relative term tolerance
    int consecutive = 3;         // stop after this many consecutive small terms
    std::size_t max_terms = 100000;
};

// Series sum with the stopping rule |term| < eps * |partial sum| for
// `consecutive` terms in a row. Fixed summation order, so results are
// bit-reproducible. Throws LowerParameterPole if a lower parameter is a
// non-positive integer, MaxTermsExceeded if the guard trips (the guard is
// raised to 10 sqrt|z| + 100 when that exceeds max_terms).
complexd hypergeometric(const HypergeometricSpec& spec, const SeriesOptions& opts = {});

complexd hyp0f1(complexd b, complexd z, const SeriesOptions& opts = {});
complexd hyp1f2(complexd a, complexd b1, complexd b2, complexd z, const SeriesOptions& opts = {});

} // namespace kerrcat
