// Dense complex linear algebra: just enough for determinants of group
// elements, the Ginibre QR construction and CMV principal minors.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace charlaw {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) noexcept {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

class ComplexVector {
public:
  ComplexVector() = default;
  explicit ComplexVector(std::size_t n) : data_(n, Complex{}) {}
  ComplexVector(std::initializer_list<Complex> values) : data_(values) {
    check_finite();
  }
  explicit ComplexVector(std::vector<Complex> values) : data_(std::move(values)) {
    check_finite();
  }

  static ComplexVector unit(std::size_t n, std::size_t k) {
    ComplexVector e(n);
    e.data_.at(k) = 1.0;
    return e;
  }

  std::size_t size() const noexcept { return data_.size(); }
  Complex& operator[](std::size_t i) noexcept { return data_[i]; }
  Complex operator[](std::size_t i) const noexcept { return data_[i]; }
  std::span<Complex> values() noexcept { return data_; }
  std::span<const Complex> values() const noexcept { return data_; }

  double norm() const noexcept {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

  friend ComplexVector operator-(const ComplexVector& a, const ComplexVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    ComplexVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
  }

private:
  void check_finite() const {
    for (const auto& z : data_)
      if (!is_finite(z)) throw std::invalid_argument("ComplexVector: non-finite entry");
  }

  std::vector<Complex> data_;
};

/// Square complex matrix, row-major storage.
class ComplexMatrix {
public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t n) : n_(n), data_(n * n, Complex{}) {}
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
      : n_(rows.size()), data_() {
    data_.reserve(n_ * n_);
    for (const auto& row : rows) {
      if (row.size() != n_) throw std::invalid_argument("ComplexMatrix: ragged or non-square rows");
      for (const auto& z : row) {
        if (!is_finite(z)) throw std::invalid_argument("ComplexMatrix: non-finite entry");
        data_.push_back(z);
      }
    }
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const Complex> d) {
    ComplexMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t size() const noexcept { return n_; }
  Complex& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
  Complex operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }
  std::span<const Complex> row(std::size_t i) const noexcept { return {data_.data() + i * n_, n_}; }

  ComplexVector column(std::size_t j) const {
    ComplexVector c(n_);
    for (std::size_t i = 0; i < n_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix a(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) a(j, i) = std::conj((*this)(i, j));
    return a;
  }

  /// Top-left k x k block.
  ComplexMatrix leading_block(std::size_t k) const {
    if (k > n_) throw std::out_of_range("leading_block: order exceeds matrix size");
    ComplexMatrix b(k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) b(i, j) = (*this)(i, j);
    return b;
  }

  double max_abs() const noexcept {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  bool all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](Complex z) { return is_finite(z); });
  }

  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("matrix size mismatch");
    ComplexMatrix out(a.n_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) out.data_[k] = a.data_[k] - b.data_[k];
    return out;
  }

  friend ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
    ComplexMatrix out = a;
    for (auto& z : out.data_) z *= s;
    return out;
  }

private:
  std::size_t n_ = 0;
  std::vector<Complex> data_;
};

/// <a, b> = sum conj(a_i) b_i.
inline Complex hermitian_inner(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("hermitian_inner: dimension mismatch");
  Complex s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

inline ComplexVector mat_vec(const ComplexMatrix& a, const ComplexVector& x) {
  const std::size_t n = a.size();
  if (x.size() != n) throw std::invalid_argument("mat_vec: dimension mismatch");
  ComplexVector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex s{};
    const auto r = a.row(i);
    for (std::size_t j = 0; j < n; ++j) s += r[j] * x[j];
    y[i] = s;
  }
  return y;
}

inline ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("mat_mul: dimension mismatch");
  ComplexMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

/// Determinant by LU factorization with partial pivoting. An exactly zero
/// pivot column short-circuits to 0.
inline Complex lu_det(ComplexMatrix a) {
  const std::size_t n = a.size();
  Complex det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) return Complex{};
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      det = -det;
    }
    const Complex pivot = a(k, k);
    det *= pivot;
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = a(i, k) / pivot;
      if (f == Complex{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

struct QRFactors {
  ComplexMatrix q;
  ComplexMatrix r;
};

/// Householder QR with the phase convention diag(R) real and positive.
/// Under that convention the Q factor of a Ginibre matrix is Haar on U(n).
/// Throws std::domain_error when a column is numerically dependent.
inline QRFactors householder_qr(const ComplexMatrix& a) {
  constexpr double kPivotFloor = 1e-12;
  const std::size_t n = a.size();
  ComplexMatrix r = a;
  // Householder vectors, stored so Q can be accumulated afterwards.
  std::vector<std::vector<Complex>> reflectors(n);

  for (std::size_t k = 0; k < n; ++k) {
    double tail = 0.0;
    for (std::size_t i = k; i < n; ++i) tail += std::norm(r(i, k));
    const double col_norm = std::sqrt(tail);
    if (col_norm < kPivotFloor) throw std::domain_error("householder_qr: rank-deficient input");

    const Complex x0 = r(k, k);
    const Complex phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex{1.0};
    // v = x + phase*|x| e_k maps x to -phase*|x| e_k without cancellation.
    std::vector<Complex> v(n - k);
    for (std::size_t i = k; i < n; ++i) v[i - k] = r(i, k);
    v[0] += phase * col_norm;
    double vnorm2 = 0.0;
    for (const auto& z : v) vnorm2 += std::norm(z);

    for (std::size_t j = k; j < n; ++j) {
      Complex s{};
      for (std::size_t i = k; i < n; ++i) s += std::conj(v[i - k]) * r(i, j);
      s *= 2.0 / vnorm2;
      for (std::size_t i = k; i < n; ++i) r(i, j) -= v[i - k] * s;
    }
    for (std::size_t i = k + 1; i < n; ++i) r(i, k) = Complex{};
    reflectors[k] = std::move(v);
  }

  // Q = H_0 H_1 ... H_{n-1}, applied to the identity from the right end.
  ComplexMatrix q = ComplexMatrix::identity(n);
  for (std::size_t kk = n; kk-- > 0;) {
    const auto& v = reflectors[kk];
    double vnorm2 = 0.0;
    for (const auto& z : v) vnorm2 += std::norm(z);
    for (std::size_t j = 0; j < n; ++j) {
      Complex s{};
      for (std::size_t i = kk; i < n; ++i) s += std::conj(v[i - kk]) * q(i, j);
      s *= 2.0 / vnorm2;
      for (std::size_t i = kk; i < n; ++i) q(i, j) -= v[i - kk] * s;
    }
  }

  // Fold the phase of each diagonal entry of R into the matching column of Q.
  for (std::size_t k = 0; k < n; ++k) {
    const Complex d = r(k, k);
    const double m = std::abs(d);
    const Complex u = d / m;
    for (std::size_t j = k; j < n; ++j) r(k, j) *= std::conj(u);
    r(k, k) = m;
    for (std::size_t i = 0; i < n; ++i) q(i, k) *= u;
  }
  return {std::move(q), std::move(r)};
}

/// max |(U* U - Id)_{ij}|
inline double unitarity_defect(const ComplexMatrix& u) {
  const std::size_t n = u.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex s{};
      for (std::size_t k = 0; k < n; ++k) s += std::conj(u(k, i)) * u(k, j);
      if (i == j) s -= 1.0;
      worst = std::max(worst, std::abs(s));
    }
  return worst;
}

/// Largest |C_ij| over entries with |i - j| > band.
inline double off_band_max(const ComplexMatrix& c, std::size_t band) {
  double worst = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) {
      const std::size_t d = i > j ? i - j : j - i;
      if (d > band) worst = std::max(worst, std::abs(c(i, j)));
    }
  return worst;
}

}  // namespace charlaw
