#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mateq/equation_solver.hpp"
#include "mateq/matrix.hpp"

namespace mateq::stress {

/// Time step, relaxation timescale and critical stress of the modified Prony
/// element. All strictly positive.
class StepConfig {
public:
    StepConfig(double dt, double tau_p, double sigma_c);

    double dt() const noexcept { return dt_; }
    double tau_p() const noexcept { return tau_p_; }
    double sigma_c() const noexcept { return sigma_c_; }

    /// a = dt / tau_p >= 0 and b = -sigma_c < 0, so every step has a unique solution.
    SolverParams params() const { return {dt_ / tau_p_, -sigma_c_}; }

private:
    double dt_;
    double tau_p_;
    double sigma_c_;
};

struct State {
    Matrix sigma_v = Matrix::zeros(3, 3);
    /// Frobenius norm of sigma_v, i.e. the scalar root of the step that produced it.
    double scalar_root = 0.0;
    /// 1 + (dt/tau_p) exp(|sigma_v| / sigma_c) at that root.
    double coefficient = 1.0;
    /// Set when the step input Y had |tr Y| > 1e-8 |Y|_F (not deviatoric).
    bool trace_warning = false;
};

/// Maps sigma_v,k to its rotated counterpart sigma_v,k^R. Identity when absent.
using Rotation = std::function<Matrix(const Matrix&, std::size_t step)>;

/// One implicit Euler update:
/// (1 + dt/tau_p exp(|X|/sigma_c)) X = delta_sigma_el + sigma_rotated.
State step(const StepConfig& config, const Matrix& sigma_rotated, const Matrix& delta_sigma_el);

/// Folds step over the driving increments starting from `initial` (zero by
/// default). Returns one state per increment.
std::vector<State> simulate(const StepConfig& config, std::span<const Matrix> driving,
                            const Rotation& rotate = {}, const std::optional<Matrix>& initial = std::nullopt);

}  // namespace mateq::stress
