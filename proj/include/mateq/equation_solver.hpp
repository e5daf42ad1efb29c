#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "mateq/matrix.hpp"
#include "mateq/scalar_solver.hpp"

namespace mateq {

/// Coefficients with magnitude at or below this are treated as singular.
inline constexpr double kSingularCoefficient = 1e-14;

/// One matrix solution X together with the scalar root |X| it came from.
struct Solution {
    Matrix x;
    double root;
    bool tangent;
    /// |1 + a e^{-root/b}| <= kSingularCoefficient. X was rebuilt as
    /// sign * (root / |Y|) * Y instead of dividing by the coefficient.
    bool ill_conditioned = false;
};

/// The degenerate solution set {0} u {X : |X| = radius}, radius = b ln|a|.
struct ZeroUnionSphere {
    double radius;
};

class SolutionSet {
public:
    explicit SolutionSet(std::vector<Solution> finite) : value_(std::move(finite)) {}
    explicit SolutionSet(ZeroUnionSphere sphere) : value_(sphere) {}

    bool is_degenerate() const noexcept { return std::holds_alternative<ZeroUnionSphere>(value_); }
    /// Throws std::bad_variant_access when degenerate.
    const std::vector<Solution>& solutions() const { return std::get<std::vector<Solution>>(value_); }
    const ZeroUnionSphere& sphere() const { return std::get<ZeroUnionSphere>(value_); }

private:
    std::variant<std::vector<Solution>, ZeroUnionSphere> value_;
};

/// Everything solve_equation computed along the way; the CLI reports all of it.
struct EquationResult {
    double y;  ///< norm of Y
    ScalarRoots scalar;
    SolutionSet set;
};

/// (1 + a e^{-x/b})^{-1} Y. Throws InvalidParameter if the coefficient is singular.
Matrix reconstruct(const SolverParams& params, double x, const Matrix& y);

/// All X with (1 + a e^{-|X|/b}) X = Y.
EquationResult solve_equation_detailed(const SolverParams& params, const Matrix& y, const Norm& norm);

inline SolutionSet solve_equation(const SolverParams& params, const Matrix& y, const Norm& norm) {
    return solve_equation_detailed(params, y, norm).set;
}

/// |(1 + a e^{-|X|/b}) X - Y|. Throws InvalidParameter on shape mismatch.
double residual(const SolverParams& params, const Matrix& x, const Matrix& y, const Norm& norm);

/// A matrix on the sphere |X| = radius for a built-in norm:
///   Frobenius, Two: x11 = sqrt(radius^2 - c^2), x12 = c
///   One:            x11 = radius - c,           x21 = c
///   Infinity:       x11 = radius - c,           x12 = c
/// Requires 0 <= c <= radius and rows, cols >= 2.
Matrix sample_degenerate(const Norm& norm, double radius, double c, std::size_t rows, std::size_t cols);

/// Representatives of the degenerate set for a concrete shape, always starting with 0.
///
/// For 1 x 1 this is exactly {0, r, -r}. For rows, cols >= 2 and a built-in
/// norm it adds `count` sphere points from sample_degenerate with c spread over
/// [0, r]. Otherwise it returns {0, r E, -r E} with E = E11 / |E11|.
std::vector<Matrix> degenerate_representatives(const ZeroUnionSphere& sphere, const Norm& norm,
                                               std::size_t rows, std::size_t cols, std::size_t count = 3);

}  // namespace mateq
