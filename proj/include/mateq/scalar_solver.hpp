#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace mateq {

/// Parameters (a, b) of (1 + a e^{-|X|/b}) X = Y. Construction rejects b == 0
/// and non-finite values.
class SolverParams {
public:
    SolverParams(double a, double b);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }

    /// 1 + a e^{-x/b}.
    double coefficient(double x) const;

private:
    double a_;
    double b_;
};

/// f(x) = |1 + a e^{-x/b}| x for x >= 0. Throws InvalidParameter for x < 0.
double f_eval(const SolverParams& params, double x);

/// Stationary points of f and the zero of its coefficient, where they lie in (0, inf).
struct CriticalPoints {
    std::optional<double> x0;  ///< local max (saddle when a == e^2)
    std::optional<double> x1;  ///< local min, only for a >= e^2 and b > 0
    std::optional<double> sign_change;  ///< b ln|a|
    std::optional<double> f_at_x0;
    std::optional<double> f_at_x1;
};

CriticalPoints critical_points(const SolverParams& params);

/// The fifteen solvability regimes, named after the item letters (a)..(o).
enum class Case { A, B, C, D, E, F, G, H, I, J, K, L, M, N, O };

char case_letter(Case c) noexcept;

struct CaseLabel {
    Case tag;
    /// 1, 2 or 3 for finite cases. For the degenerate cases C and L this holds
    /// the number of scalar roots (2) and `degenerate` is set.
    int expected_root_count;
    bool degenerate = false;
    /// b ln|a| for the degenerate cases.
    std::optional<double> radius;
    /// f(x0) and f(x1) when the case depends on them.
    std::optional<double> threshold_max;
    std::optional<double> threshold_min;
};

/// Half width of the band around a threshold inside which y is classified as tangent.
double tangency_tolerance(const CriticalPoints& cp);

/// Assigns (a, b, y) to exactly one case. Throws InvalidParameter for y < 0 or non-finite y.
CaseLabel classify(const SolverParams& params, double y);

enum class CoefficientSign { Negative = -1, Zero = 0, Positive = 1 };

struct ScalarRoot {
    double x;
    CoefficientSign coefficient_sign;
    bool tangent;
};

struct ScalarRoots {
    CaseLabel label;
    std::vector<ScalarRoot> roots;  ///< strictly increasing in x
};

/// All roots of |1 + a e^{-x/b}| x = y in [0, inf).
ScalarRoots solve_scalar(const SolverParams& params, double y);

/// Newton-Raphson on (1 + a e^{-x/b}) x - y from x = y, valid only for a >= 0, b < 0.
///
/// Convergence is monotone from the right, but in the exponential regime each
/// step shrinks x by roughly |b|, so y/|b| much beyond the iteration cap of 200
/// raises ConvergenceError.
double newton_case_a(const SolverParams& params, double y);

}  // namespace mateq
