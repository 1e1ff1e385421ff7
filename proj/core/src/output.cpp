#include "escat/output.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace escat::output {

std::string format_real(Real value) {
  // shortest decimal form that round-trips the double exactly
  char buf[40];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  require(ec == std::errc(), ErrorKind::Io, "format_real: conversion failed");
  return std::string(buf, ptr);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorKind::Io, "cannot open '" + path + "' for writing");
  out << content;
  require(out.good(), ErrorKind::Io, "write failed for '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorKind::Io, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
  return out.str();
}

std::string far_field_csv(const FarFieldPattern& pattern) {
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < pattern.angles.size(); ++i) {
    const CVec2& up = pattern.u_p[i];
    const CVec2& us = pattern.u_s[i];
    rows.push_back({format_real(pattern.angles[i]), format_real(up.x().real()),
                    format_real(up.x().imag()), format_real(up.y().real()),
                    format_real(up.y().imag()), format_real(us.x().real()),
                    format_real(us.x().imag()), format_real(us.y().real()),
                    format_real(us.y().imag())});
  }
  return to_csv({"angle", "re_up1", "im_up1", "re_up2", "im_up2", "re_us1", "im_us1", "re_us2",
                 "im_us2"},
                rows);
}

std::string corner_terms_csv(const std::vector<identity::CornerTermBreakdown>& breakdowns) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& b : breakdowns) {
    rows.push_back({format_real(b.tau), format_real(b.h), format_real(b.r1), format_real(b.r2),
                    format_real(b.r3), format_real(b.r4), format_real(b.i1), format_real(b.i2),
                    format_real(b.bound_r1), format_real(b.bound_r2), format_real(b.bound_r3),
                    format_real(b.bound_r4), format_real(b.bound_i1), format_real(b.bound_i2)});
  }
  return to_csv({"tau", "h", "R1", "R2", "R3", "R4", "I1", "I2", "bound_R1", "bound_R2",
                 "bound_R3", "bound_R4", "bound_I1", "bound_I2"},
                rows);
}

namespace {

std::string svg_header(int width, int height, const std::string& title) {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">"
      << title << "</text>\n";
  return out.str();
}

std::string polyline(const std::vector<std::pair<Real, Real>>& pts, const std::string& color) {
  std::ostringstream out;
  out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
  for (const auto& [x, y] : pts) out << format_real(x) << "," << format_real(y) << " ";
  out << "\"/>\n";
  return out.str();
}

}  // namespace

std::string far_field_polar_svg(const FarFieldPattern& pattern) {
  const int size = 420;
  const Real cx = size / 2.0, cy = size / 2.0 + 10.0;
  Real peak = 0.0;
  for (std::size_t i = 0; i < pattern.angles.size(); ++i)
    peak = std::max({peak, pattern.u_p[i].norm(), pattern.u_s[i].norm()});
  const Real scale = peak > 0.0 ? 170.0 / peak : 1.0;

  std::ostringstream out;
  out << svg_header(size, size + 20, "far-field pattern (blue |U_p|, red |U_s|)");
  out << "<circle cx=\"" << cx << "\" cy=\"" << cy
      << "\" r=\"170\" fill=\"none\" stroke=\"#cccccc\"/>\n";

  auto curve = [&](const std::vector<CVec2>& values, const std::string& color) {
    std::vector<std::pair<Real, Real>> pts;
    for (std::size_t i = 0; i <= pattern.angles.size(); ++i) {
      const std::size_t k = i % pattern.angles.size();
      const Real r = values[k].norm() * scale;
      pts.emplace_back(cx + r * std::cos(pattern.angles[k]),
                       cy - r * std::sin(pattern.angles[k]));
    }
    return polyline(pts, color);
  };
  out << curve(pattern.u_p, "#1f4fd0") << curve(pattern.u_s, "#d02f1f");
  out << "<text x=\"12\" y=\"" << size + 12 << "\" font-size=\"11\">peak |U| = "
      << format_real(peak) << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

std::string scatter_svg(const ScatterPlot& plot) {
  require(plot.x.size() == plot.y.size() && !plot.x.empty(), ErrorKind::Parameter,
          "scatter_svg: mismatched or empty data");
  const int w = 460, h = 360;
  const Real left = 60, right = 20, top = 36, bottom = 44;
  Real xmin = plot.x[0], xmax = plot.x[0], ymin = plot.y[0], ymax = plot.y[0];
  for (std::size_t i = 0; i < plot.x.size(); ++i) {
    xmin = std::min(xmin, plot.x[i]);
    xmax = std::max(xmax, plot.x[i]);
    ymin = std::min(ymin, plot.y[i]);
    ymax = std::max(ymax, plot.y[i]);
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) ymax = ymin + 1.0;
  const Real xpad = 0.06 * (xmax - xmin), ypad = 0.08 * (ymax - ymin);
  xmin -= xpad; xmax += xpad; ymin -= ypad; ymax += ypad;
  auto px = [&](Real x) { return left + (x - xmin) / (xmax - xmin) * (w - left - right); };
  auto py = [&](Real y) { return h - bottom - (y - ymin) / (ymax - ymin) * (h - top - bottom); };

  std::ostringstream out;
  out << svg_header(w, h, plot.title);
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << (w - left - right)
      << "\" height=\"" << (h - top - bottom)
      << "\" fill=\"none\" stroke=\"#888888\"/>\n";
  if (plot.with_fit) {
    std::vector<std::pair<Real, Real>> line = {
        {px(xmin), py(plot.fit_intercept + plot.fit_slope * xmin)},
        {px(xmax), py(plot.fit_intercept + plot.fit_slope * xmax)}};
    out << polyline(line, "#d02f1f");
  }
  for (std::size_t i = 0; i < plot.x.size(); ++i) {
    out << "<circle cx=\"" << format_real(px(plot.x[i])) << "\" cy=\""
        << format_real(py(plot.y[i])) << "\" r=\"3.5\" fill=\"#1f4fd0\"/>\n";
  }
  out << "<text x=\"" << (left + (w - left - right) / 2) << "\" y=\"" << h - 10
      << "\" text-anchor=\"middle\" font-size=\"12\">" << plot.x_label << "</text>\n";
  out << "<text x=\"16\" y=\"" << (top + (h - top - bottom) / 2)
      << "\" font-size=\"12\" transform=\"rotate(-90 16 " << (top + (h - top - bottom) / 2)
      << ")\" text-anchor=\"middle\">" << plot.y_label << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace escat::output
