#pragma once

namespace mateq::lambert {

/// Inputs this far below -1/e are still accepted and treated as the branch point.
inline constexpr double kBranchPointSlack = 1e-15;

/// Principal real branch W0 on [-1/e, inf), values in [-1, inf).
///
/// Throws DomainError for z < -1/e - kBranchPointSlack and ConvergenceError if
/// the Halley refinement does not settle within its iteration cap.
double w0(double z);

/// Lower real branch W-1 on [-1/e, 0), values in (-inf, -1].
double w_minus1(double z);

/// Distance e*z + 1 to the branch point, computed with a split 1/e so that it
/// is accurate when z is close to -1/e. Negative below the branch point.
double branch_point_offset(double z);

}  // namespace mateq::lambert
