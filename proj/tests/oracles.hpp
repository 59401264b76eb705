// Test-only reference computations. Nothing here calls into the code paths
// these oracles are used to check.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace oracle {

using Complex = std::complex<double>;
using Dense = std::vector<std::vector<Complex>>;

/// Laplace expansion along the first row. Exponential cost; n <= 8.
inline Complex cofactor_det(const Dense& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1.0;
  if (n == 1) return a[0][0];
  Complex det{};
  for (std::size_t col = 0; col < n; ++col) {
    Dense minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Complex> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != col) row.push_back(a[i][j]);
      minor.push_back(row);
    }
    const Complex term = a[0][col] * cofactor_det(minor);
    det += (col % 2 == 0) ? term : -term;
  }
  return det;
}

/// Polynomial with coefficient k multiplying z^k.
using Poly = std::vector<Complex>;

inline Complex eval(const Poly& p, Complex z) {
  Complex s{};
  for (std::size_t k = p.size(); k-- > 0;) s = s * z + p[k];
  return s;
}

/// p*(z) = z^d conj(p(1/conj z)) for a degree-d polynomial: reverse and
/// conjugate the coefficient list.
inline Poly reversed(const Poly& p, std::size_t degree) {
  Poly q(degree + 1, Complex{});
  for (std::size_t k = 0; k <= degree && k < p.size(); ++k) q[degree - k] = std::conj(p[k]);
  return q;
}

/// Monic Phi_0..Phi_n built coefficient by coefficient from
/// Phi_{j+1} = z Phi_j - conj(alpha_j) Phi_j^*, with Phi_j^* obtained by
/// explicit reversal (no dual recursion).
inline std::vector<Poly> szego_polynomials(const std::vector<Complex>& alpha) {
  std::vector<Poly> phi{{Complex{1.0}}};
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    const Poly& p = phi.back();
    const Poly star = reversed(p, j);
    Poly next(j + 2, Complex{});
    for (std::size_t k = 0; k <= j; ++k) next[k + 1] += p[k];
    for (std::size_t k = 0; k <= j; ++k) next[k] -= std::conj(alpha[j]) * star[k];
    phi.push_back(next);
  }
  return phi;
}

/// Dilogarithm Li_2(x) for x in [0, 1].
inline double dilog(double x) {
  if (x == 0.0) return 0.0;
  if (x == 1.0) return std::numbers::pi * std::numbers::pi / 6.0;
  if (x > 0.5) return std::numbers::pi * std::numbers::pi / 6.0 - std::log(x) * std::log1p(-x) - dilog(1.0 - x);
  double s = 0.0, term = x;
  for (int k = 1; k < 200; ++k) {
    s += term / (static_cast<double>(k) * k);
    term *= x;
    if (term < 1e-18) break;
  }
  return s;
}

/// E[(Re log(1 - alpha))^2] = E[(log|1 - alpha|)^2] for alpha = e^{i theta}
/// sqrt(B), B ~ Beta(1, s); s = 0 means |alpha| = 1.
///
/// For fixed radius r the angular average of log^2|1 - r e^{i theta}| is
/// Li_2(r^2)/2 (Parseval on -sum r^k cos(k theta)/k). The remaining 1-D
/// integral over B is done by tanh-sinh quadrature after the substitution
/// B = 1 - (1 - u)^{1/s}, which turns the Beta(1, s) weight into du.
inline double re_log_factor_second_moment(std::size_t s) {
  if (s == 0) return dilog(1.0) / 2.0;
  const double inv = 1.0 / static_cast<double>(s);
  static boost::math::quadrature::tanh_sinh<double> integrator;
  auto f = [inv](double u) {
    const double b = -std::expm1(inv * std::log1p(-u));
    return 0.5 * dilog(std::min(1.0, std::max(0.0, b)));
  };
  return integrator.integrate(f, 0.0, 1.0);
}

/// Direct 2-D quadrature of E|1 - e^{i theta} sqrt(B)|^2 with B ~ Beta(1, s)
/// (s = 0: B = 1).
inline double abs2_factor_by_quadrature(std::size_t s) {
  using boost::math::quadrature::gauss_kronrod;
  auto angular = [](double r) {
    auto g = [r](double theta) { return std::norm(1.0 - std::polar(r, theta)) / (2.0 * std::numbers::pi); };
    return gauss_kronrod<double, 61>::integrate(g, 0.0, 2.0 * std::numbers::pi);
  };
  if (s == 0) return angular(1.0);
  const double sd = static_cast<double>(s);
  auto h = [&](double b) { return angular(std::sqrt(b)) * sd * std::pow(1.0 - b, sd - 1.0); };
  return gauss_kronrod<double, 61>::integrate(h, 0.0, 1.0);
}

/// Mass of the disk density (s/pi)(1 - |z|^2)^{s-1} over the annular sector
/// r0 < |z| < r1, phi0 < arg z < phi1, by 2-D quadrature in polar form.
inline double disk_density_mass(std::size_t s, double r0, double r1, double phi0, double phi1) {
  using boost::math::quadrature::gauss_kronrod;
  const double sd = static_cast<double>(s);
  auto radial = [&](double r) {
    auto g = [&](double) { return sd / std::numbers::pi * std::pow(1.0 - r * r, sd - 1.0) * r; };
    return gauss_kronrod<double, 15>::integrate(g, phi0, phi1);
  };
  return gauss_kronrod<double, 61>::integrate(radial, r0, r1);
}

/// E|alpha|^2 under the same density by 2-D quadrature over the whole disk.
inline double disk_density_abs2(std::size_t s) {
  using boost::math::quadrature::gauss_kronrod;
  const double sd = static_cast<double>(s);
  auto radial = [&](double r) {
    auto g = [&](double) { return r * r * sd / std::numbers::pi * std::pow(1.0 - r * r, sd - 1.0) * r; };
    return gauss_kronrod<double, 15>::integrate(g, 0.0, 2.0 * std::numbers::pi);
  };
  return gauss_kronrod<double, 61>::integrate(radial, 0.0, 1.0);
}

/// All permutations of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> all_permutations(std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  std::vector<std::vector<std::size_t>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace oracle
