#include "escat/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace escat::fitting {

LineFit fit_line(const std::vector<Real>& x, const std::vector<Real>& y) {
  require(x.size() == y.size() && x.size() >= 2, ErrorKind::Parameter,
          "fit_line: needs two samples of equal length");
  const Real n = static_cast<Real>(x.size());
  const Real mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const Real my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  Real sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  require(sxx > 0.0, ErrorKind::Parameter, "fit_line: degenerate abscissa");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Real r = y[i] - (fit.intercept + fit.slope * x[i]);
    fit.residual_ss += r * r;
  }
  fit.r2 = syy > 0.0 ? 1.0 - fit.residual_ss / syy : 1.0;
  return fit;
}

namespace {

std::vector<Real> ranks(const std::vector<Real>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&values](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<Real> rank(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const Real mean_rank = 0.5 * (i + j) + 1.0;  // average ranks across ties
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = mean_rank;
    i = j + 1;
  }
  return rank;
}

}  // namespace

Real spearman(const std::vector<Real>& x, const std::vector<Real>& y) {
  require(x.size() == y.size() && x.size() >= 2, ErrorKind::Parameter,
          "spearman: needs two samples of equal length");
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  Real mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= rx.size();
  my /= ry.size();
  Real sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  require(sxx > 0.0 && syy > 0.0, ErrorKind::Parameter, "spearman: constant sample");
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace escat::fitting
