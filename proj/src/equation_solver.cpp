#include "mateq/equation_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mateq/error.hpp"

namespace mateq {

Matrix reconstruct(const SolverParams& params, double x, const Matrix& y) {
    const double coef = params.coefficient(x);
    if (!(std::abs(coef) > kSingularCoefficient)) {
        throw InvalidParameter("reconstruct: coefficient 1 + a e^{-x/b} is singular at x = " + std::to_string(x));
    }
    return (1.0 / coef) * y;
}

EquationResult solve_equation_detailed(const SolverParams& params, const Matrix& y, const Norm& norm) {
    const double y_norm = norm(y);
    ScalarRoots scalar = solve_scalar(params, y_norm);

    if (scalar.label.degenerate) {
        SolutionSet sphere(ZeroUnionSphere{*scalar.label.radius});
        return {y_norm, std::move(scalar), std::move(sphere)};
    }

    std::vector<Solution> solutions;
    solutions.reserve(scalar.roots.size());
    for (const ScalarRoot& root : scalar.roots) {
        if (y_norm == 0.0) {
            // Only x = 0 is a root here, even when 1 + a = 0.
            solutions.push_back({Matrix::zeros(y.rows(), y.cols()), root.x, root.tangent});
            continue;
        }
        if (root.coefficient_sign == CoefficientSign::Zero) {
            throw InternalError("solve_equation: zero coefficient at a root with Y != 0");
        }
        const double coef = params.coefficient(root.x);
        if (std::abs(coef) > kSingularCoefficient) {
            solutions.push_back({reconstruct(params, root.x, y), root.x, root.tangent});
        } else {
            // At a root |coef| = |Y| / x, so this is the same matrix without the
            // cancellation in 1 + a e^{-x/b}.
            const double sign = root.coefficient_sign == CoefficientSign::Positive ? 1.0 : -1.0;
            solutions.push_back({(sign * root.x / y_norm) * y, root.x, root.tangent, true});
        }
    }
    return {y_norm, std::move(scalar), SolutionSet(std::move(solutions))};
}

double residual(const SolverParams& params, const Matrix& x, const Matrix& y, const Norm& norm) {
    if (!x.same_shape(y)) throw InvalidParameter("residual: shapes of X and Y differ");
    Matrix r = params.coefficient(norm(x)) * x;
    r -= y;
    return norm(r);
}

Matrix sample_degenerate(const Norm& norm, double radius, double c, std::size_t rows, std::size_t cols) {
    if (!norm.is_builtin()) throw InvalidParameter("sample_degenerate: only built-in norms are supported");
    if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidParameter("sample_degenerate: radius must be positive");
    if (!(c >= 0.0 && c <= radius)) throw InvalidParameter("sample_degenerate: c must lie in [0, radius]");
    if (rows < 2 || cols < 2) throw InvalidParameter("sample_degenerate: needs at least 2 rows and 2 columns");

    Matrix x(rows, cols);
    switch (norm.kind()) {
        case Norm::Kind::Frobenius:
        case Norm::Kind::Two:
            x(0, 0) = std::sqrt((radius - c) * (radius + c));
            x(0, 1) = c;
            break;
        case Norm::Kind::One:
            x(0, 0) = radius - c;
            x(1, 0) = c;
            break;
        case Norm::Kind::Infinity:
            x(0, 0) = radius - c;
            x(0, 1) = c;
            break;
        case Norm::Kind::Custom:
            break;
    }
    return x;
}

std::vector<Matrix> degenerate_representatives(const ZeroUnionSphere& sphere, const Norm& norm,
                                               std::size_t rows, std::size_t cols, std::size_t count) {
    const double r = sphere.radius;
    std::vector<Matrix> out{Matrix::zeros(rows, cols)};
    if (rows >= 2 && cols >= 2 && norm.is_builtin()) {
        for (std::size_t k = 0; k < count; ++k) {
            const double c = count == 1 ? 0.0 : r * static_cast<double>(k) / static_cast<double>(count - 1);
            out.push_back(sample_degenerate(norm, r, std::min(c, r), rows, cols));
        }
        return out;
    }
    Matrix unit(rows, cols);
    unit(0, 0) = 1.0;
    unit *= 1.0 / norm(unit);
    out.push_back(r * unit);
    out.push_back(-r * unit);
    return out;
}

}  // namespace mateq
