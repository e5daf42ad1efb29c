#include "mateq/lambert_w.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "mateq/error.hpp"

namespace mateq::lambert {

namespace {

// 1/e split into a double and the rounding remainder.
constexpr double kInvEHi = 0.36787944117144233;
constexpr double kInvELo = -1.2428753672788363e-17;

constexpr int kMaxIterations = 50;
constexpr double kStepTolerance = 1e-15;

// Below this branch-point variable the series is already exact to rounding and
// Halley steps only amplify the noise in w*e^w - z.
constexpr double kSeriesOnlyRadius = 1e-2;

// Expansion of W around the branch point in p = +-sqrt(2(ez+1)).
// The sign of p selects the branch (+ for W0, - for W-1).
double branch_series(double p) {
    static constexpr std::array<double, 9> kCoeffs = {
        -1.0,
        1.0,
        -1.0 / 3.0,
        11.0 / 72.0,
        -43.0 / 540.0,
        769.0 / 17280.0,
        -221.0 / 8505.0,
        680863.0 / 43545600.0,
        -1963.0 / 204120.0,
    };
    double acc = 0.0;
    for (auto it = kCoeffs.rbegin(); it != kCoeffs.rend(); ++it) acc = acc * p + *it;
    return acc;
}

bool step_converged(double dw, double w, double previous_dw) {
    const double adw = std::abs(dw);
    const double scale = std::max(std::abs(w), 1e-300);
    if (adw <= kStepTolerance * scale) return true;
    // Rounding noise floor: the step stopped shrinking at near machine precision.
    return adw >= previous_dw && adw <= 64.0 * std::numeric_limits<double>::epsilon() * scale;
}

// Halley on w*e^w - z. Used where |w| is moderate so e^w neither overflows nor
// underflows.
double halley(double w, double z, const char* name) {
    double previous = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kMaxIterations; ++i) {
        const double ew = std::exp(w);
        const double f = w * ew - z;
        if (f == 0.0) return w;
        const double wp1 = w + 1.0;
        const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        const double dw = f / denom;
        w -= dw;
        if (step_converged(dw, w, previous)) return w;
        previous = std::abs(dw);
    }
    throw ConvergenceError(std::string(name) + ": Halley iteration did not converge");
}

// Newton on the logarithmic form w + ln|w| = ln|z|, valid when w and z share
// sign and |w| is away from 1. Avoids e^w overflow for huge z.
double log_newton(double w, double z, const char* name) {
    const double log_z = std::log(std::abs(z));
    double previous = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kMaxIterations; ++i) {
        const double g = w + std::log(std::abs(w)) - log_z;
        const double dw = g / (1.0 + 1.0 / w);
        w -= dw;
        if (step_converged(dw, w, previous)) return w;
        previous = std::abs(dw);
    }
    throw ConvergenceError(std::string(name) + ": Newton iteration did not converge");
}

// Returns the clamped branch-point offset, or throws when z is too far below -1/e.
double checked_offset(double z, const char* name) {
    if (std::isnan(z)) throw DomainError(std::string(name) + ": argument is NaN");
    const double offset = branch_point_offset(z);
    if (offset < 0.0) {
        if (z < -kInvEHi - kBranchPointSlack) {
            throw DomainError(std::string(name) + ": argument below -1/e");
        }
        return 0.0;
    }
    return offset;
}

}  // namespace

double branch_point_offset(double z) {
    return std::numbers::e * ((z + kInvEHi) + kInvELo);
}

double w0(double z) {
    const double offset = checked_offset(z, "w0");
    if (z == 0.0) return 0.0;
    if (std::isinf(z)) return z;

    if (z < -0.25) {
        const double p = std::sqrt(2.0 * offset);
        const double guess = branch_series(p);
        if (p < kSeriesOnlyRadius) return guess;
        return halley(guess, z, "w0");
    }
    if (z <= 0.25) {
        return halley(z * (1.0 - z * (1.0 - 1.5 * z)), z, "w0");
    }
    if (z < 3.0) {
        const double l = std::log1p(z);
        return halley(l * (1.0 - std::log1p(l) / (2.0 + l)), z, "w0");
    }
    const double l1 = std::log(z);
    const double l2 = std::log(l1);
    return log_newton(l1 - l2 + l2 / l1, z, "w0");
}

double w_minus1(double z) {
    if (z >= 0.0) throw DomainError("w_minus1: argument must be negative");
    const double offset = checked_offset(z, "w_minus1");

    if (z < -0.25) {
        const double p = -std::sqrt(2.0 * offset);
        const double guess = branch_series(p);
        if (-p < kSeriesOnlyRadius) return guess;
        return halley(guess, z, "w_minus1");
    }
    const double l1 = std::log(-z);
    const double l2 = std::log(-l1);
    const double guess = l1 - l2 + l2 / l1;
    if (z < -0.2) return halley(guess, z, "w_minus1");
    return log_newton(guess, z, "w_minus1");
}

}  // namespace mateq::lambert
