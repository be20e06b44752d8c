// Regular (x, p) grid carrying either a scalar field (Wigner density) or a
// vector field (drift), plus the parameter snapshot for file emission.

#pragma once

#include <cstddef>
#include <vector>

#include "kerrcat/model.hpp"

namespace kerrcat {

struct GridSpec {
    double x_min = -1.0, x_max = 1.0;
    double p_min = -1.0, p_max = 1.0;
    std::size_t nx = 2, np = 2;  // number of nodes per axis, >= 1
};

struct PhaseSpaceGrid {
    std::vector<double> x_axis;
    std::vector<double> p_axis;
    // scalar values or (dx, dp) pairs, row-major over (p, x): index = ip*nx + ix
    std::vector<double> values;
    std::vector<std::pair<double, double>> vectors;
    ModelParams params;

    bool is_vector_field() const { return !vectors.empty(); }
    std::size_t nx() const { return x_axis.size(); }
    std::size_t np() const { return p_axis.size(); }
    double value_at(std::size_t ix, std::size_t ip) const { return values[ip * nx() + ix]; }
};

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    const double h = (hi - lo) / double(n - 1);
    for (std::size_t i = 0; i < n; ++i) v[i] = lo + h * double(i);
    return v;
}

} // namespace kerrcat
