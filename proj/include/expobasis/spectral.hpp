#pragma once

#include <vector>

#include "expobasis/domain.hpp"
#include "expobasis/matrix.hpp"
#include "expobasis/vandermonde.hpp"

namespace expobasis {

enum class ConditionFlag { nonsingular, numerically_singular };

/// sigma_min < kSingularityRatio * sigma_max is reported as singular.
inline constexpr double kSingularityRatio = 1e-10;

struct SingularSpectrum {
  std::vector<double> values;  // descending
  ConditionFlag condition_flag = ConditionFlag::nonsingular;

  double max() const { return values.empty() ? 0.0 : values.front(); }
  double min() const { return values.empty() ? 0.0 : values.back(); }
};

/// Singular values by one-sided (Hestenes) Jacobi orthogonalization of the
/// columns. Works for any shape; returns min(rows, cols) values.
SingularSpectrum singular_values(const CMatrix& a);
SingularSpectrum singular_values(const NodeMatrix& gamma);

/// Eigenvalues of a Hermitian matrix, ascending, by cyclic two-sided Jacobi.
/// Stops once the off-diagonal Frobenius norm falls below 1e-14 * ||A||_F
/// or after 60 sweeps.
std::vector<double> hermitian_eigenvalues(const CMatrix& h);

/// A_opt = sigma_min^2, B_opt = sigma_max^2.
FrameConstants optimal_frame_constants(const NodeMatrix& gamma);

bool is_singular(const NodeMatrix& gamma);

}  // namespace expobasis
