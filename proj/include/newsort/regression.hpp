#pragma once

// Ordinary least-squares polynomial fitting over small grids, the R^2
// statistic, parsimony-based degree selection, and the dependent/flat
// verdict used when deciding whether a sweep actually moved the metric.
//
// Fitting happens on a centered and scaled x axis: raw-power designs on
// grids reaching 100 are badly conditioned even at degree 4. Coefficients
// are expanded back to the raw basis afterwards, which is what reports and
// plots consume.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace newsort {

struct FitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PolyFit {
  int degree = 0;
  std::vector<double> coefficients;  // raw x basis, ascending powers
  double r_squared = 0.0;
  double ss_res = 0.0;
  double ss_tot = 0.0;
  std::size_t n_points = 0;

  double adjusted_r_squared() const {
    const double n = static_cast<double>(n_points);
    return 1.0 - (1.0 - r_squared) * (n - 1.0) / (n - degree - 1.0);
  }
};

/// Horner evaluation of ascending-power coefficients.
inline double predict(std::span<const double> coefficients, double x) {
  double acc = 0.0;
  for (std::size_t i = coefficients.size(); i-- > 0;) acc = acc * x + coefficients[i];
  return acc;
}

inline double predict(const PolyFit& fit, double x) {
  return predict(std::span<const double>(fit.coefficients), x);
}

namespace detail {

// Householder QR least squares for the tall dense systems used here
// (n x m with m <= 7, n <= a few dozen). `a` is row-major and consumed.
inline std::vector<double> qr_least_squares(std::vector<double> a, std::size_t n, std::size_t m,
                                            std::vector<double> y) {
  auto at = [&](std::size_t r, std::size_t c) -> double& { return a[r * m + c]; };
  std::vector<double> v(n);
  for (std::size_t col = 0; col < m; ++col) {
    double norm = 0.0;
    for (std::size_t r = col; r < n; ++r) norm += at(r, col) * at(r, col);
    norm = std::sqrt(norm);
    if (norm == 0.0) throw FitError("rank-deficient design matrix (duplicate xs?)");
    const double alpha = at(col, col) > 0.0 ? -norm : norm;
    double vtv = 0.0;
    for (std::size_t r = col; r < n; ++r) {
      v[r] = at(r, col);
      if (r == col) v[r] -= alpha;
      vtv += v[r] * v[r];
    }
    if (vtv > 0.0) {
      for (std::size_t c = col; c < m; ++c) {
        double dot = 0.0;
        for (std::size_t r = col; r < n; ++r) dot += v[r] * at(r, c);
        const double scale = 2.0 * dot / vtv;
        for (std::size_t r = col; r < n; ++r) at(r, c) -= scale * v[r];
      }
      double dot = 0.0;
      for (std::size_t r = col; r < n; ++r) dot += v[r] * y[r];
      const double scale = 2.0 * dot / vtv;
      for (std::size_t r = col; r < n; ++r) y[r] -= scale * v[r];
    }
  }
  std::vector<double> coef(m);
  for (std::size_t col = m; col-- > 0;) {
    double acc = y[col];
    for (std::size_t c = col + 1; c < m; ++c) acc -= at(col, c) * coef[c];
    if (at(col, col) == 0.0) throw FitError("singular triangular factor");
    coef[col] = acc / at(col, col);
  }
  return coef;
}

// result(x) = poly(x) * (b0 + b1*x)
inline std::vector<double> poly_times_linear(const std::vector<double>& poly, double b0, double b1) {
  std::vector<double> result(poly.size() + 1, 0.0);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    result[i] += poly[i] * b0;
    result[i + 1] += poly[i] * b1;
  }
  return result;
}

}  // namespace detail

/// Least-squares polynomial of degree `degree` through (xs, ys). Throws
/// FitError for too few points, duplicate xs, or constant ys ("zero
/// variance": R^2 is undefined at ss_tot = 0, which is a verdict-level case,
/// not a fit).
inline PolyFit polyfit(std::span<const double> xs, std::span<const double> ys, int degree) {
  const std::size_t n = xs.size();
  if (n != ys.size()) throw FitError("xs and ys differ in length");
  if (degree < 1 || degree > 6) throw FitError("degree must lie in 1..6");
  if (n < static_cast<std::size_t>(degree) + 1) throw FitError("too few points for the degree");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (xs[i] == xs[j]) throw FitError("duplicate xs");
    }
  }

  const double y_mean = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(n);
  double ss_tot = 0.0;
  for (double y : ys) ss_tot += (y - y_mean) * (y - y_mean);
  if (ss_tot == 0.0) throw FitError("zero variance: ys are constant");

  // center/scale x for conditioning
  const double x_mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(n);
  double x_var = 0.0;
  for (double x : xs) x_var += (x - x_mean) * (x - x_mean);
  const double x_scale = std::sqrt(x_var / static_cast<double>(n - 1));

  const std::size_t m = static_cast<std::size_t>(degree) + 1;
  std::vector<double> design(n * m);
  for (std::size_t r = 0; r < n; ++r) {
    const double t = (xs[r] - x_mean) / x_scale;
    double power = 1.0;
    for (std::size_t c = 0; c < m; ++c) {
      design[r * m + c] = power;
      power *= t;
    }
  }
  const std::vector<double> scaled =
      detail::qr_least_squares(std::move(design), n, m, std::vector<double>(ys.begin(), ys.end()));

  // expand sum a_i * ((x - mean)/scale)^i into raw ascending powers of x
  std::vector<double> raw{scaled[m - 1]};
  for (std::size_t i = m - 1; i-- > 0;) {
    raw = detail::poly_times_linear(raw, -x_mean / x_scale, 1.0 / x_scale);
    raw[0] += scaled[i];
  }

  PolyFit fit;
  fit.degree = degree;
  fit.coefficients = std::move(raw);
  fit.n_points = n;
  fit.ss_tot = ss_tot;
  for (std::size_t r = 0; r < n; ++r) {
    const double resid = ys[r] - predict(fit, xs[r]);
    fit.ss_res += resid * resid;
  }
  fit.r_squared = std::clamp(1.0 - fit.ss_res / fit.ss_tot, 0.0, 1.0);
  return fit;
}

inline PolyFit polyfit(const std::vector<double>& xs, const std::vector<double>& ys, int degree) {
  return polyfit(std::span<const double>(xs), std::span<const double>(ys), degree);
}

/// Fits degrees 1..min(max_degree, n-2) and keeps the smallest degree whose
/// adjusted R^2 comes within 0.005 of the best (parsimony tie-break).
inline std::pair<int, PolyFit> select_degree(std::span<const double> xs,
                                             std::span<const double> ys, int max_degree) {
  const int limit = std::min<int>(max_degree, static_cast<int>(xs.size()) - 2);
  if (limit < 1) throw FitError("too few points to select a degree");
  std::vector<PolyFit> fits;
  double best_adjusted = -std::numeric_limits<double>::infinity();
  for (int d = 1; d <= limit; ++d) {
    fits.push_back(polyfit(xs, ys, d));
    best_adjusted = std::max(best_adjusted, fits.back().adjusted_r_squared());
  }
  for (auto& fit : fits) {
    if (fit.adjusted_r_squared() >= best_adjusted - 0.005) {
      return {fit.degree, std::move(fit)};
    }
  }
  return {fits.back().degree, std::move(fits.back())};  // unreachable
}

inline std::pair<int, PolyFit> select_degree(const std::vector<double>& xs,
                                             const std::vector<double>& ys, int max_degree) {
  return select_degree(std::span<const double>(xs), std::span<const double>(ys), max_degree);
}

/// Outcome of asking whether ys move with xs at all. `dependent` requires the
/// selected fit to explain at least 80% of the variance; constant ys are flat
/// by definition (degree 0, R^2 reported as 0). The threshold sits midway
/// between the weakest published "depends" fit (0.9066) and the near-zero
/// fits of the flat tables, and is reported so callers can re-threshold.
struct DependenceVerdict {
  bool dependent = false;
  int degree = 0;
  double r_squared = 0.0;

  const char* name() const { return dependent ? "Dependent" : "Flat"; }
};

inline constexpr double kDependenceThreshold = 0.8;

inline DependenceVerdict dependence_verdict(std::span<const double> xs,
                                            std::span<const double> ys, int max_degree) {
  const double mean = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
  bool constant = true;
  for (double y : ys) constant = constant && y == mean;
  if (constant) return {};
  const auto [degree, fit] = select_degree(xs, ys, max_degree);
  return {fit.r_squared >= kDependenceThreshold, degree, fit.r_squared};
}

inline DependenceVerdict dependence_verdict(const std::vector<double>& xs,
                                            const std::vector<double>& ys, int max_degree) {
  return dependence_verdict(std::span<const double>(xs), std::span<const double>(ys), max_degree);
}

/// Spearman rank correlation with average ranks for ties.
inline double spearman_rho(std::span<const double> xs, std::span<const double> ys) {
  const std::size_t n = xs.size();
  if (n != ys.size() || n < 2) throw std::invalid_argument("spearman_rho: need two equal-length series");
  auto ranks = [n](std::span<const double> v) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> rank(n);
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
      const double shared = 0.5 * static_cast<double>(i + j) + 1.0;
      for (std::size_t k = i; k <= j; ++k) rank[order[k]] = shared;
      i = j + 1;
    }
    return rank;
  };
  const std::vector<double> rx = ranks(xs);
  const std::vector<double> ry = ranks(ys);
  const double mean = (static_cast<double>(n) + 1.0) / 2.0;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (rx[i] - mean) * (ry[i] - mean);
    sxx += (rx[i] - mean) * (rx[i] - mean);
    syy += (ry[i] - mean) * (ry[i] - mean);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;  // a constant series carries no rank signal
  return sxy / std::sqrt(sxx * syy);
}

inline double spearman_rho(const std::vector<double>& xs, const std::vector<double>& ys) {
  return spearman_rho(std::span<const double>(xs), std::span<const double>(ys));
}

}  // namespace newsort
