// Orthogonal polynomials on the unit circle: Verblunsky coefficients, the
// Szego recursion, CMV matrices and the moment <-> coefficient maps.
//
// Conventions. Phi_j is the monic degree-j orthogonal polynomial of the
// spectral measure nu of (G, e_1), and Phi*_j(z) = z^j conj(Phi_j(1/conj z)).
// The recursion is
//   Phi_{j+1}(z)  = z Phi_j(z) - conj(alpha_j) Phi*_j(z)
//   Phi*_{j+1}(z) = Phi*_j(z)  - alpha_j z Phi_j(z)
// and Phi_j(z) = det(z Id_j - C^{(j)}) for the leading j x j block of the CMV
// matrix C built from the same coefficients.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "charlaw/linalg.hpp"
#include "charlaw/random.hpp"

namespace charlaw {

class VerblunskySequence {
public:
  static constexpr double kInteriorSlack = 1e-12;
  static constexpr double kBoundaryTolerance = 1e-8;

  /// Throws std::invalid_argument unless |alpha_j| < 1 for j < n-1 and
  /// |alpha_{n-1}| = 1.
  explicit VerblunskySequence(std::vector<Complex> alpha) : alpha_(std::move(alpha)) {
    if (alpha_.empty()) throw std::invalid_argument("VerblunskySequence: empty");
    for (std::size_t j = 0; j + 1 < alpha_.size(); ++j)
      if (!is_finite(alpha_[j]) || !(std::abs(alpha_[j]) < 1.0 + kInteriorSlack))
        throw std::invalid_argument("VerblunskySequence: interior coefficient outside the unit disk");
    if (!is_finite(alpha_.back()) || std::abs(std::abs(alpha_.back()) - 1.0) >= kBoundaryTolerance)
      throw std::invalid_argument("VerblunskySequence: last coefficient not on the unit circle");
  }

  std::size_t size() const noexcept { return alpha_.size(); }
  Complex operator[](std::size_t j) const noexcept { return alpha_[j]; }
  const std::vector<Complex>& coefficients() const noexcept { return alpha_; }

private:
  std::vector<Complex> alpha_;
};

/// c_0..c_n with c_k = <e_1, G^k e_1>; c_{-k} = conj(c_k).
class MomentSequence {
public:
  explicit MomentSequence(std::vector<Complex> c) : c_(std::move(c)) {
    if (c_.empty()) throw std::invalid_argument("MomentSequence: empty");
    if (std::abs(c_[0] - Complex{1.0}) > 1e-10) throw std::invalid_argument("MomentSequence: c_0 must be 1");
  }

  /// Highest moment index held.
  std::size_t order() const noexcept { return c_.size() - 1; }
  Complex operator[](std::size_t k) const noexcept { return c_[k]; }

  /// Moment at any index in [-order, order].
  Complex at(long long k) const {
    const auto idx = static_cast<std::size_t>(k < 0 ? -k : k);
    if (idx >= c_.size()) throw std::out_of_range("MomentSequence: index beyond available moments");
    return k < 0 ? std::conj(c_[idx]) : c_[idx];
  }

  const std::vector<Complex>& values() const noexcept { return c_; }

private:
  std::vector<Complex> c_;
};

/// Independent coefficients alpha_j with the disk law of parameter n-j-1.
inline VerblunskySequence sample_verblunsky_kn(std::size_t n, RngStream& rng) {
  if (n == 0) throw std::invalid_argument("sample_verblunsky_kn: n must be positive");
  std::vector<Complex> alpha(n);
  for (std::size_t j = 0; j < n; ++j) alpha[j] = sample_kn_alpha(static_cast<long long>(n - j - 1), rng);
  return VerblunskySequence(std::move(alpha));
}

struct SzegoLevel {
  Complex phi;
  Complex phi_star;
};

/// (Phi_j(z), Phi*_j(z)) for j = 0..n.
inline std::vector<SzegoLevel> szego_eval(const VerblunskySequence& v, Complex z) {
  std::vector<SzegoLevel> out;
  out.reserve(v.size() + 1);
  Complex phi = 1.0, star = 1.0;
  out.push_back({phi, star});
  for (std::size_t j = 0; j < v.size(); ++j) {
    const Complex a = v[j];
    const Complex next = z * phi - std::conj(a) * star;
    star = star - a * z * phi;
    phi = next;
    out.push_back({phi, star});
  }
  return out;
}

/// Phi_j(1) for j = 0..n; at z = 1, Phi*_j(1) = conj(Phi_j(1)).
inline std::vector<Complex> phi_at_one(const VerblunskySequence& v) {
  std::vector<Complex> out;
  out.reserve(v.size() + 1);
  Complex phi = 1.0;
  out.push_back(phi);
  for (std::size_t j = 0; j < v.size(); ++j) {
    phi = phi - std::conj(v[j]) * std::conj(phi);
    out.push_back(phi);
  }
  return out;
}

namespace detail {

// Writes the 2x2 block Theta_j = [[conj a, rho], [rho, -a]] at offset k of m,
// truncated to its top-left entry when only one row remains.
inline void place_theta(ComplexMatrix& m, std::size_t k, Complex a) {
  const std::size_t n = m.size();
  m(k, k) = std::conj(a);
  if (k + 1 >= n) return;
  const double rho = std::sqrt(std::max(0.0, 1.0 - std::norm(a)));
  m(k, k + 1) = rho;
  m(k + 1, k) = rho;
  m(k + 1, k + 1) = -a;
}

}  // namespace detail

/// CMV matrix C = L M with L = Theta_0 (+) Theta_2 (+) ... and
/// M = (1) (+) Theta_1 (+) Theta_3 (+) ...; unitary and five-diagonal.
inline ComplexMatrix cmv_from_verblunsky(const VerblunskySequence& v) {
  const std::size_t n = v.size();
  ComplexMatrix l(n), m(n);
  for (std::size_t j = 0; j < n; j += 2) detail::place_theta(l, j, v[j]);
  m(0, 0) = 1.0;
  for (std::size_t j = 1; j < n; j += 2) detail::place_theta(m, j, v[j]);

  // Both factors are block diagonal; the product touches at most 3 columns
  // per row, but the dense product is cheap at the sizes used here.
  return mat_mul(l, m);
}

/// det(z Id_j - C^{(j)}) for the leading j x j block of c.
inline Complex principal_minor_charpoly(const ComplexMatrix& c, std::size_t j, Complex z) {
  if (j < 1 || j > c.size()) throw std::out_of_range("principal_minor_charpoly: order out of range");
  ComplexMatrix block = c.leading_block(j);
  ComplexMatrix a = z * ComplexMatrix::identity(j) - block;
  return lu_det(std::move(a));
}

/// c_k = <e_1, G^k e_1>, k = 0..k_max, by repeated products with e_1.
inline MomentSequence moments_from_matrix(const ComplexMatrix& g, std::size_t k_max) {
  const std::size_t n = g.size();
  if (n == 0) throw std::invalid_argument("moments_from_matrix: empty matrix");
  std::vector<Complex> c;
  c.reserve(k_max + 1);
  ComplexVector x = ComplexVector::unit(n, 0);
  c.push_back(1.0);
  for (std::size_t k = 1; k <= k_max; ++k) {
    x = mat_vec(g, x);
    c.push_back(x[0]);
  }
  return MomentSequence(std::move(c));
}

/// Recovers alpha_0..alpha_{n-1} from c_0..c_n by monic Gram-Schmidt on
/// 1, z, ..., z^n in L^2(nu), reading alpha_j = -conj(Phi_{j+1}(0)). The raw
/// coefficients are returned without the unit-circle check on the last one.
/// Throws std::domain_error if a Gram-Schmidt pivot falls below 1e-10
/// (e_1 is not cyclic for G or too few moments were supplied).
inline std::vector<Complex> recover_verblunsky_coefficients(const MomentSequence& m) {
  constexpr double kPivotFloor = 1e-10;
  const std::size_t n = m.order();
  if (n == 0) throw std::invalid_argument("recover_verblunsky_coefficients: need at least c_0 and c_1");

  // Polynomials as coefficient vectors (index = power).
  // <p, q> = sum_{a,b} conj(p_a) q_b c_{b-a}.
  auto inner = [&m](const std::vector<Complex>& p, const std::vector<Complex>& q) {
    Complex s{};
    for (std::size_t a = 0; a < p.size(); ++a) {
      if (p[a] == Complex{}) continue;
      const Complex pa = std::conj(p[a]);
      for (std::size_t b = 0; b < q.size(); ++b)
        s += pa * q[b] * m.at(static_cast<long long>(b) - static_cast<long long>(a));
    }
    return s;
  };

  std::vector<std::vector<Complex>> phi;
  std::vector<double> norms2;
  phi.push_back({Complex{1.0}});
  norms2.push_back(1.0);

  std::vector<Complex> alpha;
  alpha.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<Complex> monomial(k + 1, Complex{});
    monomial[k] = 1.0;
    std::vector<Complex> p = monomial;
    for (std::size_t j = 0; j < k; ++j) {
      const Complex proj = inner(phi[j], monomial) / norms2[j];
      for (std::size_t i = 0; i < phi[j].size(); ++i) p[i] -= proj * phi[j][i];
    }
    alpha.push_back(-std::conj(p[0]));
    if (k < n) {
      const double nrm = inner(p, p).real();
      if (!(nrm > kPivotFloor))
        throw std::domain_error("recover_verblunsky_coefficients: e_1 not cyclic or insufficient moments");
      norms2.push_back(nrm);
    }
    phi.push_back(std::move(p));
  }
  return alpha;
}

/// Same, validated as a VerblunskySequence.
inline VerblunskySequence verblunsky_from_moments(const MomentSequence& m) {
  return VerblunskySequence(recover_verblunsky_coefficients(m));
}

}  // namespace charlaw
