// Statistical instruments: Kolmogorov-Smirnov tests, moment estimators with
// standard errors and the exact cycle-count law of a uniform permutation.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "charlaw/linalg.hpp"

namespace charlaw {

/// P(K > lambda) for the limiting Kolmogorov distribution.
inline double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.18) {
    // Jacobi theta form, fast for small lambda.
    const double a = std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
    double s = 0.0;
    for (int k = 1; k <= 20; ++k) {
      const double m = 2.0 * k - 1.0;
      s += std::exp(-m * m * a);
    }
    return std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * s, 0.0, 1.0);
  }
  double s = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    s += (k % 2 == 1 ? term : -term);
    if (term < 1e-300) break;
  }
  return std::clamp(2.0 * s, 0.0, 1.0);
}

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Two-sample KS: sup |F_a - F_b| with the asymptotic p-value at effective
/// size m k / (m + k). Ties are consumed together.
inline KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double m = static_cast<double>(x.size()), k = static_cast<double>(y.size());

  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / m - static_cast<double>(j) / k));
  }
  const double ne = m * k / (m + k);
  return {d, kolmogorov_survival(std::sqrt(ne) * d)};
}

/// One-sample KS against a continuous CDF.
inline KsResult ks_one_sample(std::span<const double> a, const std::function<double(double)>& cdf) {
  if (a.empty()) throw std::invalid_argument("ks_one_sample: empty sample");
  std::vector<double> x(a.begin(), a.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return {d, kolmogorov_survival(std::sqrt(n) * d)};
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

struct Estimate {
  double value = 0.0;
  double standard_error = 0.0;

  bool within(double target, double num_se) const {
    return std::abs(value - target) <= num_se * standard_error;
  }
};

/// Sample mean with plain standard error s / sqrt(n).
inline Estimate mean_estimate(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("mean_estimate: empty sample");
  const double n = static_cast<double>(x.size());
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;
  if (x.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

/// Unbiased sample variance; the standard error uses the fourth central
/// moment, sqrt((m4 - s^4) / n).
inline Estimate variance_estimate(std::span<const double> x) {
  if (x.size() < 2) throw std::invalid_argument("variance_estimate: need at least two values");
  const double n = static_cast<double>(x.size());
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;
  double m2 = 0.0, m4 = 0.0;
  for (double v : x) {
    const double d2 = (v - mean) * (v - mean);
    m2 += d2;
    m4 += d2 * d2;
  }
  const double var = m2 / (n - 1.0);
  m4 /= n;
  const double pop = m2 / n;
  return {var, std::sqrt(std::max(0.0, m4 - pop * pop) / n)};
}

/// Pearson correlation of paired samples.
inline double correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("correlation: need paired samples");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

/// Empirical E|Z|^s with its plain standard error.
inline Estimate mellin_modulus_moment(std::span<const Complex> values, double s) {
  std::vector<double> m;
  m.reserve(values.size());
  for (const auto& z : values) m.push_back(std::pow(std::abs(z), s));
  return mean_estimate(m);
}

/// P(k = m) for m = 1..n, where k is the number of cycles of a uniform
/// permutation of n points: unsigned Stirling numbers of the first kind over
/// n!. Entry 0 of the returned vector is P(k = 1).
inline std::vector<double> cycle_count_exact_law(int n) {
  if (n < 1 || n > 12) throw std::invalid_argument("cycle_count_exact_law: n must be in [1, 12]");
  // c[m] holds c(row, m) as the recurrence advances row by row.
  std::vector<std::uint64_t> c(static_cast<std::size_t>(n) + 1, 0);
  c[1] = 1;
  for (int row = 2; row <= n; ++row)
    for (int m = row; m >= 1; --m) c[m] = c[m - 1] + static_cast<std::uint64_t>(row - 1) * c[m];

  std::uint64_t factorial = 1;
  for (int k = 2; k <= n; ++k) factorial *= static_cast<std::uint64_t>(k);
  std::vector<double> p;
  for (int m = 1; m <= n; ++m) p.push_back(static_cast<double>(c[m]) / static_cast<double>(factorial));
  return p;
}

/// Empirical law over {1..n} from integer observations.
inline std::vector<double> empirical_law(std::span<const std::size_t> counts, std::size_t n) {
  std::vector<double> p(n, 0.0);
  for (std::size_t k : counts) {
    if (k < 1 || k > n) throw std::out_of_range("empirical_law: observation outside {1..n}");
    p[k - 1] += 1.0;
  }
  for (double& v : p) v /= static_cast<double>(counts.size());
  return p;
}

inline double total_variation(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("total_variation: support mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

}  // namespace charlaw
