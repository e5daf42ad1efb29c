#include "mateq/scalar_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "brent.hpp"
#include "mateq/error.hpp"
#include "mateq/lambert_w.hpp"

namespace mateq {

namespace {

const double kESquared = std::exp(2.0);

constexpr double kTangencyRelTol = 1e-9;
constexpr int kMaxDoublings = 2100;

void require_valid_y(double y) {
    if (!std::isfinite(y) || y < 0.0) {
        throw InvalidParameter("y must be finite and non-negative, got " + std::to_string(y));
    }
}

CoefficientSign sign_of(double v) {
    if (v > 0.0) return CoefficientSign::Positive;
    if (v < 0.0) return CoefficientSign::Negative;
    return CoefficientSign::Zero;
}

// f - y, pinned to -y at the coefficient zero so that rounding in f there
// cannot flip the sign of a bracket end when y is tiny.
auto level_fn(const SolverParams& params, double y, double zero_at) {
    return [&params, y, zero_at](double x) { return x == zero_at ? -y : f_eval(params, x) - y; };
}

CaseLabel finite(Case tag, int count) {
    CaseLabel label{};
    label.tag = tag;
    label.expected_root_count = count;
    return label;
}

constexpr double kNoZero = -1.0;

// Root of f - y on a monotone piece [lo, hi] whose end values straddle y.
double piece_root(const SolverParams& params, double y, double lo, double hi,
                  double zero_at = kNoZero) {
    return detail::brent_root(level_fn(params, y, zero_at), lo, hi);
}

// Root on the unbounded piece [lo, inf), where f increases without bound.
double unbounded_root(const SolverParams& params, double y, double lo, double zero_at = kNoZero) {
    const auto g = level_fn(params, y, zero_at);
    double hi = std::max(1.0, lo);
    for (int i = 0; g(hi) <= 0.0; ++i) {
        if (i == kMaxDoublings || !std::isfinite(hi)) {
            throw InternalError("solve_scalar: failed to bracket the root on the unbounded piece");
        }
        hi *= 2.0;
    }
    return detail::brent_root(g, lo, hi);
}

}  // namespace

SolverParams::SolverParams(double a, double b) : a_(a), b_(b) {
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw InvalidParameter("a and b must be finite");
    }
    if (b == 0.0) throw InvalidParameter("b must be nonzero");
}

double SolverParams::coefficient(double x) const { return 1.0 + a_ * std::exp(-x / b_); }

double f_eval(const SolverParams& params, double x) {
    if (!(x >= 0.0)) throw InvalidParameter("f_eval: x must be non-negative");
    return std::abs(params.coefficient(x)) * x;
}

CriticalPoints critical_points(const SolverParams& params) {
    const double a = params.a();
    const double b = params.b();
    CriticalPoints cp;

    const bool local_max_only = (b < 0.0 && a > -1.0 && a < 0.0) || (b > 0.0 && a < -1.0);
    const bool max_and_min = b > 0.0 && a >= kESquared;

    if (local_max_only || max_and_min) {
        const double z = -std::numbers::e / a;
        cp.x0 = b * (1.0 - lambert::w0(z));
        cp.f_at_x0 = f_eval(params, *cp.x0);
        if (max_and_min) {
            cp.x1 = b * (1.0 - lambert::w_minus1(z));
            cp.f_at_x1 = f_eval(params, *cp.x1);
        }
    }
    if (local_max_only) cp.sign_change = b * std::log(std::abs(a));
    return cp;
}

char case_letter(Case c) noexcept { return static_cast<char>('a' + static_cast<int>(c)); }

double tangency_tolerance(const CriticalPoints& cp) {
    return kTangencyRelTol * std::max(1.0, cp.f_at_x0.value_or(0.0));
}

CaseLabel classify(const SolverParams& params, double y) {
    require_valid_y(y);
    const double a = params.a();
    const double b = params.b();

    if (b < 0.0) {
        if (a >= 0.0) return finite(Case::A, 1);
        if (a <= -1.0) return finite(Case::B, 1);
    } else {
        if (a >= 0.0 && a <= kESquared) return finite(Case::G, 1);
        if (a < 0.0 && a >= -1.0) return finite(Case::K, 1);
    }

    const CriticalPoints cp = critical_points(params);
    const double tol = tangency_tolerance(cp);
    const double t_max = *cp.f_at_x0;

    if (a > kESquared) {
        const double t_min = *cp.f_at_x1;
        CaseLabel label = finite(Case::H, 1);
        if (std::abs(y - t_max) <= tol || std::abs(y - t_min) <= tol) {
            label = finite(Case::I, 2);
        } else if (y > t_min && y < t_max) {
            label = finite(Case::J, 3);
        }
        label.threshold_max = t_max;
        label.threshold_min = t_min;
        return label;
    }

    // Coefficient changes sign at b ln|a| > 0: (-1 < a < 0, b < 0) or (a < -1, b > 0).
    const bool neg_b = b < 0.0;
    CaseLabel label = finite(neg_b ? Case::F : Case::O, 1);
    if (y == 0.0) {
        label = finite(neg_b ? Case::C : Case::L, 2);
        label.degenerate = true;
        label.radius = *cp.sign_change;
    } else if (std::abs(y - t_max) <= tol) {
        label = finite(neg_b ? Case::E : Case::N, 2);
    } else if (y < t_max) {
        label = finite(neg_b ? Case::D : Case::M, 3);
    }
    label.threshold_max = t_max;
    return label;
}

ScalarRoots solve_scalar(const SolverParams& params, double y) {
    ScalarRoots out{classify(params, y), {}};
    auto& roots = out.roots;
    const Case tag = out.label.tag;

    if (out.label.degenerate) {
        roots.push_back({0.0, sign_of(params.coefficient(0.0)), false});
        roots.push_back({*out.label.radius, CoefficientSign::Zero, false});
        return out;
    }
    if (y == 0.0) {
        roots.push_back({0.0, sign_of(params.coefficient(0.0)), false});
        return out;
    }
    if (params.a() == 0.0) {
        roots.push_back({y, CoefficientSign::Positive, false});
        return out;
    }

    constexpr auto kPos = CoefficientSign::Positive;
    constexpr auto kNeg = CoefficientSign::Negative;

    switch (tag) {
        case Case::A:
        case Case::G:
        case Case::K:
            roots.push_back({unbounded_root(params, y, 0.0), kPos, false});
            break;
        case Case::B:
            roots.push_back({unbounded_root(params, y, 0.0), kNeg, false});
            break;
        case Case::D:
        case Case::E:
        case Case::F:
        case Case::M:
        case Case::N:
        case Case::O: {
            const CriticalPoints cp = critical_points(params);
            const double x0 = *cp.x0;
            const double x2 = *cp.sign_change;
            // Coefficient sign before and after b ln|a|.
            const bool neg_b = params.b() < 0.0;
            const CoefficientSign inner = neg_b ? kPos : kNeg;
            const CoefficientSign outer = neg_b ? kNeg : kPos;
            if (tag == Case::D || tag == Case::M) {
                roots.push_back({piece_root(params, y, 0.0, x0), inner, false});
                roots.push_back({piece_root(params, y, x0, x2, x2), inner, false});
            } else if (tag == Case::E || tag == Case::N) {
                roots.push_back({x0, inner, true});
            }
            roots.push_back({unbounded_root(params, y, x2, x2), outer, false});
            break;
        }
        case Case::H:
        case Case::I:
        case Case::J: {
            const CriticalPoints cp = critical_points(params);
            const double x0 = *cp.x0;
            const double x1 = *cp.x1;
            const double t_max = *cp.f_at_x0;
            const double t_min = *cp.f_at_x1;
            if (tag == Case::J) {
                roots.push_back({piece_root(params, y, 0.0, x0), kPos, false});
                roots.push_back({piece_root(params, y, x0, x1), kPos, false});
                roots.push_back({unbounded_root(params, y, x1), kPos, false});
            } else if (tag == Case::H) {
                if (y < t_min) {
                    roots.push_back({piece_root(params, y, 0.0, x0), kPos, false});
                } else {
                    roots.push_back({unbounded_root(params, y, x1), kPos, false});
                }
            } else if (std::abs(y - t_max) <= std::abs(y - t_min)) {
                // Touches the local maximum; the other crossing is past the minimum.
                roots.push_back({x0, kPos, true});
                if (t_min < y) {
                    roots.push_back({unbounded_root(params, y, x1), kPos, false});
                } else {
                    roots.push_back({x1, kPos, true});
                }
            } else {
                roots.push_back({piece_root(params, y, 0.0, x0), kPos, false});
                roots.push_back({x1, kPos, true});
            }
            break;
        }
        case Case::C:
        case Case::L:
            break;
    }

    // The two roots around b ln|a| can round to the same double when y is tiny;
    // they stay distinct through their coefficient signs.
    for (std::size_t i = 1; i < roots.size(); ++i) {
        const bool straddle = roots[i].coefficient_sign != roots[i - 1].coefficient_sign;
        if (!(roots[i].x > roots[i - 1].x || (straddle && roots[i].x == roots[i - 1].x))) {
            throw InternalError("solve_scalar: roots not increasing");
        }
    }
    if (static_cast<int>(roots.size()) != out.label.expected_root_count) {
        throw InternalError("solve_scalar: root count disagrees with classification");
    }
    return out;
}

double newton_case_a(const SolverParams& params, double y) {
    const double a = params.a();
    const double b = params.b();
    if (!(a >= 0.0 && b < 0.0)) {
        throw InvalidParameter("newton_case_a requires a >= 0 and b < 0");
    }
    require_valid_y(y);
    if (a == 0.0) return y;

    constexpr int kMaxIterations = 200;
    constexpr double kOverflowGuard = 700.0;
    const double scale = -b;
    const double log_a = std::log(a);
    const double tol = 1e-12 * std::max(1.0, y);

    double x = y;
    for (int i = 0; i < kMaxIterations; ++i) {
        const double t = log_a + x / scale;
        double step;
        if (t < kOverflowGuard) {
            const double growth = std::exp(t);
            const double g = x + growth * x - y;
            if (std::abs(g) <= tol) return x;
            step = g / (1.0 + growth * (1.0 + x / scale));
        } else {
            // Numerator and denominator divided by a e^{x/|b|} to stay finite.
            const double shrink = std::exp(-t);
            step = (x * (shrink + 1.0) - y * shrink) / (shrink + 1.0 + x / scale);
        }
        x -= step;
    }
    throw ConvergenceError("newton_case_a: no convergence within 200 iterations");
}

}  // namespace mateq
