#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "mateq/error.hpp"

namespace mateq::detail {

// Brent-Dekker zero finder on a sign-changing bracket [lo, hi]. Runs until the
// bracket is a few ulps wide, so the result is limited only by the rounding in g.
template <class Fn>
double brent_root(Fn&& g, double lo, double hi) {
    constexpr double kEps = std::numeric_limits<double>::epsilon();
    constexpr double kAbsFloor = 1e-300;
    constexpr int kMaxIterations = 1000;

    double a = lo;
    double b = hi;
    double fa = g(a);
    double fb = g(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) {
        throw InternalError("brent_root: interval does not bracket a root");
    }

    double c = a;
    double fc = fa;
    double d = b - a;
    double e = d;
    for (int i = 0; i < kMaxIterations; ++i) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol = 2.0 * kEps * std::abs(b) + 0.5 * kAbsFloor;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol || fb == 0.0) return b;

        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            const double s = fb / fa;
            double p;
            double q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol ? d : std::copysign(tol, xm);
        fb = g(b);
    }
    throw ConvergenceError("brent_root: iteration cap reached");
}

}  // namespace mateq::detail
