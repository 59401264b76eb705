// Haar samplers for U(n) and for the phased permutation group, plus the
// O(n) cycle formula for det(Id - S) on the latter.
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "charlaw/linalg.hpp"
#include "charlaw/random.hpp"

namespace charlaw {

/// Haar unitary as the phase-normalized Q factor of a Ginibre matrix.
inline ComplexMatrix sample_haar_unitary_ginibre(std::size_t n, RngStream& rng) {
  if (n == 0) throw std::invalid_argument("sample_haar_unitary_ginibre: n must be positive");
  ComplexMatrix z(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) z(i, j) = sample_complex_gaussian(rng);
  return householder_qr(z).q;
}

/// Unitary reflection R = Id - w w* / (1 - <v, e_1>), w = e_1 - v, with
/// R e_1 = v and R x = x for x orthogonal to w.
inline ComplexMatrix reflection_to(const ComplexVector& v) {
  const std::size_t n = v.size();
  if (n == 0) throw std::invalid_argument("reflection_to: empty vector");
  if (std::abs(v.norm() - 1.0) > 1e-12) throw std::invalid_argument("reflection_to: v is not a unit vector");

  ComplexVector w = ComplexVector::unit(n, 0) - v;
  if (w.norm() == 0.0) return ComplexMatrix::identity(n);
  // <v, e_1> = conj(v_0)
  const Complex denom = 1.0 - std::conj(v[0]);
  if (std::abs(denom) < 1e-14) throw std::domain_error("reflection_to: v too close to e_1");

  ComplexMatrix r = ComplexMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) -= w[i] * std::conj(w[j]) / denom;
  return r;
}

/// The block matrix 1 (+) H, which fixes e_1.
inline ComplexMatrix stabilizer_embed(const ComplexMatrix& h) {
  const std::size_t m = h.size();
  ComplexMatrix g(m + 1);
  g(0, 0) = 1.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g(i + 1, j + 1) = h(i, j);
  return g;
}

/// Haar unitary built one dimension at a time: G_k = R(v_k) (1 (+) G_{k-1})
/// with v_k uniform on the unit sphere of C^k and R(v) a reflection mapping
/// e_1 to v. The first column of G_k is v_k.
inline ComplexMatrix sample_haar_recursive(std::size_t n, RngStream& rng) {
  if (n == 0) throw std::invalid_argument("sample_haar_recursive: n must be positive");
  ComplexMatrix g(1);
  g(0, 0) = sample_uniform_phase(rng);
  for (std::size_t k = 2; k <= n; ++k) {
    ComplexVector v = sample_sphere_point(k, rng);
    // Probability-zero degeneracy: resample rather than special-case.
    while (std::abs(1.0 - std::conj(v[0])) < 1e-14) v = sample_sphere_point(k, rng);
    g = mat_mul(reflection_to(v), stabilizer_embed(g));
  }
  return g;
}

/// Element of the phased permutation group: the matrix with entry phases[j]
/// at (i, j) when sigma(i) = j, zero elsewhere. Indices are 0-based.
struct PhasedPermutation {
  std::vector<std::size_t> sigma;
  std::vector<Complex> phases;

  std::size_t size() const noexcept { return sigma.size(); }

  /// Throws std::invalid_argument if sigma is not a bijection or a phase is
  /// not unimodular.
  void validate() const {
    const std::size_t n = sigma.size();
    if (n == 0 || phases.size() != n) throw std::invalid_argument("PhasedPermutation: size mismatch");
    std::vector<bool> seen(n, false);
    for (std::size_t s : sigma) {
      if (s >= n || seen[s]) throw std::invalid_argument("PhasedPermutation: sigma is not a bijection");
      seen[s] = true;
    }
    for (const auto& p : phases)
      if (std::abs(std::abs(p) - 1.0) > 1e-12)
        throw std::invalid_argument("PhasedPermutation: phase is not unimodular");
  }
};

struct CycleDecomposition {
  std::vector<std::vector<std::size_t>> cycles;
  std::vector<Complex> cycle_phases;

  std::size_t count() const noexcept { return cycles.size(); }
  std::vector<std::size_t> lengths() const {
    std::vector<std::size_t> out;
    out.reserve(cycles.size());
    for (const auto& c : cycles) out.push_back(c.size());
    return out;
  }
};

/// Uniform permutation of {0..n-1} by Fisher-Yates.
inline std::vector<std::size_t> sample_permutation(std::size_t n, RngStream& rng) {
  std::vector<std::size_t> sigma(n);
  for (std::size_t i = 0; i < n; ++i) sigma[i] = i;
  for (std::size_t i = n; i-- > 1;) std::swap(sigma[i], sigma[rng.below(i + 1)]);
  return sigma;
}

inline std::size_t count_cycles(const std::vector<std::size_t>& sigma) {
  std::vector<bool> visited(sigma.size(), false);
  std::size_t cycles = 0;
  for (std::size_t start = 0; start < sigma.size(); ++start) {
    if (visited[start]) continue;
    ++cycles;
    for (std::size_t i = start; !visited[i]; i = sigma[i]) visited[i] = true;
  }
  return cycles;
}

/// Uniform sigma, iid uniform phases.
inline PhasedPermutation sample_phased_permutation(std::size_t n, RngStream& rng) {
  if (n == 0) throw std::invalid_argument("sample_phased_permutation: n must be positive");
  PhasedPermutation p;
  p.sigma = sample_permutation(n, rng);
  p.phases.reserve(n);
  for (std::size_t i = 0; i < n; ++i) p.phases.push_back(sample_uniform_phase(rng));
  return p;
}

inline CycleDecomposition cycle_decompose(const PhasedPermutation& p) {
  const std::size_t n = p.size();
  CycleDecomposition out;
  std::vector<bool> visited(n, false);
  for (std::size_t start = 0; start < n; ++start) {
    if (visited[start]) continue;
    std::vector<std::size_t> cycle;
    Complex phase = 1.0;
    for (std::size_t i = start; !visited[i]; i = p.sigma[i]) {
      visited[i] = true;
      cycle.push_back(i);
      phase *= p.phases[i];
    }
    out.cycles.push_back(std::move(cycle));
    out.cycle_phases.push_back(phase);
  }
  return out;
}

/// det(Id - S) = prod over cycles of (1 - product of the cycle's phases).
/// Each index is visited once; no matrix is formed.
inline Complex det_id_minus_phased_permutation(const PhasedPermutation& p) {
  const std::size_t n = p.size();
  std::vector<bool> visited(n, false);
  Complex det = 1.0;
  for (std::size_t start = 0; start < n; ++start) {
    if (visited[start]) continue;
    Complex phase = 1.0;
    for (std::size_t i = start; !visited[i]; i = p.sigma[i]) {
      visited[i] = true;
      phase *= p.phases[i];
    }
    det *= 1.0 - phase;
  }
  return det;
}

/// Dense matrix of a phased permutation: entry phases[j] at (sigma^{-1}(j), j).
inline ComplexMatrix dense(const PhasedPermutation& p) {
  const std::size_t n = p.size();
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, p.sigma[i]) = p.phases[p.sigma[i]];
  return m;
}

/// Group law: dense(compose(a, b)) == dense(a) * dense(b).
inline PhasedPermutation compose(const PhasedPermutation& a, const PhasedPermutation& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("compose: size mismatch");
  PhasedPermutation c;
  c.sigma.resize(n);
  c.phases.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = a.sigma[i];
    const std::size_t j = b.sigma[k];
    c.sigma[i] = j;
    c.phases[j] = a.phases[k] * b.phases[j];
  }
  return c;
}

}  // namespace charlaw
