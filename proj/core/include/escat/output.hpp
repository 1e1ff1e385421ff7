#pragma once

#include <string>
#include <vector>

#include "escat/forward.hpp"
#include "escat/identity.hpp"
#include "escat/types.hpp"

namespace escat::output {

/// Shortest round-trip decimal form, so equal doubles always print the same
/// bytes and parse back exactly.
std::string format_real(Real value);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// Rows of preformatted fields, stable column order.
std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows);

/// columns: angle, re/im of both components of U_p and U_s
std::string far_field_csv(const FarFieldPattern& pattern);

/// columns: tau, h, R1..R4, I1, I2 and the reference bound shapes
std::string corner_terms_csv(const std::vector<identity::CornerTermBreakdown>& rows);

/// Polar plot of |U_p| and |U_s| over the sampling angles.
std::string far_field_polar_svg(const FarFieldPattern& pattern);

/// Scatter of (x, y) points with a straight fit line (log-log axes applied by
/// the caller through the passed coordinates).
struct ScatterPlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Real> x;
  std::vector<Real> y;
  Real fit_intercept = 0.0;
  Real fit_slope = 0.0;
  bool with_fit = false;
};

std::string scatter_svg(const ScatterPlot& plot);

}  // namespace escat::output
