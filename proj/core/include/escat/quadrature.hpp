#pragma once

#include <functional>

#include "escat/types.hpp"

namespace escat::quadrature {

/// Adaptive Simpson integration of a complex-valued integrand on [a, b].
/// Terminates when the local error estimate drops below
/// max(rel_tol * |whole-interval estimate|, abs_floor).
Complex adaptive(const std::function<Complex(Real)>& fn, Real a, Real b, Real rel_tol = 1e-10,
                 int max_depth = 40);

/// Composite Gauss-Legendre (8-point) over `panels` equal panels.
Complex gauss_panels(const std::function<Complex(Real)>& fn, Real a, Real b, int panels);

}  // namespace escat::quadrature
