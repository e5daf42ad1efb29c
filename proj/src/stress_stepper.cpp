#include "mateq/stress_stepper.hpp"

#include <cmath>
#include <string>

#include "mateq/error.hpp"

namespace mateq::stress {

namespace {

void require_3x3(const Matrix& m, const char* what) {
    if (m.rows() != 3 || m.cols() != 3) {
        throw InvalidParameter(std::string(what) + " must be 3x3");
    }
}

}  // namespace

StepConfig::StepConfig(double dt, double tau_p, double sigma_c) : dt_(dt), tau_p_(tau_p), sigma_c_(sigma_c) {
    const bool ok = std::isfinite(dt) && std::isfinite(tau_p) && std::isfinite(sigma_c) && dt > 0.0 &&
                    tau_p > 0.0 && sigma_c > 0.0;
    if (!ok) throw InvalidParameter("dt, tau_p and sigma_c must be finite and positive");
}

State step(const StepConfig& config, const Matrix& sigma_rotated, const Matrix& delta_sigma_el) {
    require_3x3(sigma_rotated, "rotated stress");
    require_3x3(delta_sigma_el, "elastic stress increment");

    const Matrix y = delta_sigma_el + sigma_rotated;
    const SolverParams params = config.params();
    const SolutionSet set = solve_equation(params, y, Norm::Kind::Frobenius);
    if (set.is_degenerate() || set.solutions().size() != 1) {
        throw InternalError("stress step: expected exactly one solution");
    }

    const Solution& sol = set.solutions().front();
    State out;
    out.sigma_v = sol.x;
    out.scalar_root = sol.root;
    out.coefficient = params.coefficient(sol.root);
    const double y_norm = norm_frobenius(y);
    out.trace_warning = std::abs(trace(y)) > 1e-8 * y_norm;
    return out;
}

std::vector<State> simulate(const StepConfig& config, std::span<const Matrix> driving, const Rotation& rotate,
                            const std::optional<Matrix>& initial) {
    if (driving.empty()) throw InvalidParameter("simulate: driving sequence is empty");

    Matrix current = initial.value_or(Matrix::zeros(3, 3));
    require_3x3(current, "initial stress");

    std::vector<State> trajectory;
    trajectory.reserve(driving.size());
    for (std::size_t k = 0; k < driving.size(); ++k) {
        const Matrix rotated = rotate ? rotate(current, k) : current;
        trajectory.push_back(step(config, rotated, driving[k]));
        current = trajectory.back().sigma_v;
    }
    return trajectory;
}

}  // namespace mateq::stress
