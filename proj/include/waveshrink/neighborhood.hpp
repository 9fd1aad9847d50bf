#pragma once
// Shrinking-neighborhood specification: a window [x0 - c_n, x0 + c_n] or a
// general weight kernel W_n(x) = w((x - x0)/c_n)/c_n.

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "dyadic.hpp"

namespace waveshrink {

struct Kernel {
    std::string name;
    std::function<double(double)> w;  // weight on [-half_support, half_support]
    double half_support = 1.0;
};

inline Kernel uniform_kernel() {
    return {"uniform", [](double u) { return (u >= -1.0 && u <= 1.0) ? 0.5 : 0.0; }, 1.0};
}

inline Kernel triangular_kernel() {
    return {"triangular", [](double u) { return std::fmax(0.0, 1.0 - std::fabs(u)); }, 1.0};
}

inline Kernel kernel_by_name(const std::string& name) {
    if (name == "uniform") return uniform_kernel();
    if (name == "triangular") return triangular_kernel();
    throw std::invalid_argument("unknown kernel '" + name + "'");
}

struct NeighborhoodSpec {
    double x0 = 0.5;
    double c_n = 0.5;
    std::optional<Kernel> kernel;  // absent: uniform window risk

    NeighborhoodSpec() = default;
    NeighborhoodSpec(double center, double half_width) : x0(center), c_n(half_width) {
        if (!(x0 > 0.0 && x0 < 1.0)) throw std::invalid_argument("NeighborhoodSpec: x0 must be in (0,1)");
        if (!(c_n > 0.0 && c_n <= 0.5))
            throw std::invalid_argument("NeighborhoodSpec: c_n must be in (0, 1/2]");
    }

    Window window() const { return make_window(x0, c_n); }
};

}  // namespace waveshrink
