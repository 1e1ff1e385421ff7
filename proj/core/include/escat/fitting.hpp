#pragma once

#include <vector>

#include "escat/types.hpp"

namespace escat::fitting {

struct LineFit {
  Real intercept = 0.0;
  Real slope = 0.0;
  Real r2 = 0.0;           // coefficient of determination
  Real residual_ss = 0.0;  // sum of squared residuals
};

/// Ordinary least squares y ~ intercept + slope * x.
LineFit fit_line(const std::vector<Real>& x, const std::vector<Real>& y);

/// Spearman rank correlation (1.0 for strictly co-monotone data).
Real spearman(const std::vector<Real>& x, const std::vector<Real>& y);

}  // namespace escat::fitting
