#pragma once
// Exact dyadic support intervals and periodic interval geometry on [0,1].
//
// A basis function at (level j, position k) with support length N occupies
// [k 2^-j, (k+N) 2^-j] interpreted periodically. Endpoints are dyadic
// rationals, exact in double precision, so closed-interval intersection
// tests ("touching at a single point" counts) are deterministic.

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace waveshrink {

// A clamped closed window [a, b] inside [0, 1].
struct Window {
    double a = 0.0;
    double b = 1.0;

    double length() const { return b - a; }
};

inline Window make_window(double x0, double half_width) {
    if (half_width < 0.0) throw std::invalid_argument("make_window: negative half-width");
    Window w;
    w.a = std::fmax(0.0, x0 - half_width);
    w.b = std::fmin(1.0, x0 + half_width);
    if (w.a > w.b) throw std::invalid_argument("make_window: window degenerate after clamping");
    return w;
}

// Support of the (j,k) basis function with support length N, before
// periodic wrap: [lo, lo + width] with lo = k 2^-j, width = N 2^-j.
struct DyadicSupport {
    int level = 0;
    std::int64_t position = 0;
    std::int64_t length = 1;  // N

    double lo() const { return std::ldexp(double(position), -level); }
    double hi() const { return std::ldexp(double(position + length), -level); }
    double width() const { return std::ldexp(double(length), -level); }

    bool wraps() const { return position + length > (std::int64_t(1) << level); }
    bool covers_circle() const { return length >= (std::int64_t(1) << level); }

    // Closed-interval intersection with a window in [0,1], periodically.
    bool intersects(const Window& w) const {
        if (covers_circle()) return true;
        if (!wraps()) return lo() <= w.b && hi() >= w.a;
        // Two pieces: [lo, 1] and [0, hi - 1].
        const double tail = hi() - 1.0;
        return lo() <= w.b || tail >= w.a;
    }

    // Support contained in the window (closed on both sides).
    bool contained_in(const Window& w) const {
        if (covers_circle()) return w.a == 0.0 && w.b == 1.0;
        if (!wraps()) return w.a <= lo() && hi() <= w.b;
        return w.a == 0.0 && w.b == 1.0;
    }

    // Whether the point x lies in the (periodic, closed) support.
    bool contains(double x) const {
        if (covers_circle()) return true;
        if (!wraps()) return lo() <= x && x <= hi();
        return x >= lo() || x <= hi() - 1.0;
    }
};

enum class BasisKind { Father, Mother };

}  // namespace waveshrink
