#include "kerrcat/hypergeometric.hpp"

#include <cmath>

namespace kerrcat {

namespace {

bool nonpositive_integer(complexd b) {
    if (b.imag() != 0.0) return false;
    const double r = b.real();
    return r <= 0.0 && r == std::floor(r);
}

} // namespace

complexd hypergeometric(const HypergeometricSpec& spec, const SeriesOptions& opts) {
    for (const complexd& b : spec.lower) {
        if (nonpositive_integer(b)) {
            throw LowerParameterPole("lower parameter is a non-positive integer");
        }
    }
    const std::size_t expect_upper = spec.kind == HypKind::Hyp0F1 ? 0 : 1;
    const std::size_t expect_lower = spec.kind == HypKind::Hyp0F1 ? 1 : 2;
    if (spec.upper.size() != expect_upper || spec.lower.size() != expect_lower) {
        throw ValidationError("hypergeometric parameter count does not match kind");
    }

    const complexd z = spec.argument;
    std::size_t guard = opts.max_terms;
    const std::size_t scaled = static_cast<std::size_t>(10.0 * std::sqrt(std::abs(z)) + 100.0);
    if (scaled > guard) guard = scaled;

    complexd term{1.0, 0.0};
    complexd sum{1.0, 0.0};
    int small_streak = 0;
    for (std::size_t k = 0; k < guard; ++k) {
        complexd ratio = z / double(k + 1);
        for (const complexd& a : spec.upper) ratio *= a + double(k);
        for (const complexd& b : spec.lower) ratio /= b + double(k);
        term *= ratio;
        sum += term;
        if (std::abs(term) < opts.eps * std::abs(sum)) {
            if (++small_streak >= opts.consecutive) return sum;
        } else {
            small_streak = 0;
        }
    }
    throw MaxTermsExceeded("series did not converge within " + std::to_string(guard) + " terms");
}

complexd hyp0f1(complexd b, complexd z, const SeriesOptions& opts) {
    return hypergeometric({HypKind::Hyp0F1, {}, {b}, z}, opts);
}

complexd hyp1f2(complexd a, complexd b1, complexd b2, complexd z, const SeriesOptions& opts) {
    return hypergeometric({HypKind::Hyp1F2, {a}, {b1, b2}, z}, opts);
}

} // namespace kerrcat
