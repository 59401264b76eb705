// O(n) samplers for det(Id - G) and its logarithm that never build a matrix.
//
// Unitary group:      Z = prod_{k=1}^n (1 - e^{i theta_k} sqrt(B_k)),
//                     B_k ~ Beta(1, k-1), B_1 = 1.
// Phased permutations: Z = prod_{k=1}^n (1 - e^{i theta_k} X_k),
//                     X_k ~ Bernoulli(1/k).
// Verblunsky side:    log Z = sum_{l=0}^{n-1} log(1 - alpha_l), alpha_l from
//                     the disk law with parameter n-l-1.
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "charlaw/haar.hpp"
#include "charlaw/linalg.hpp"
#include "charlaw/random.hpp"

namespace charlaw {

inline Complex sample_unitary_product(std::size_t n, RngStream& rng) {
  if (n == 0) throw std::invalid_argument("sample_unitary_product: n must be positive");
  Complex z = 1.0 - sample_uniform_phase(rng);
  for (std::size_t k = 2; k <= n; ++k) {
    const double r = std::sqrt(sample_beta_1_s(static_cast<double>(k - 1), rng));
    z *= 1.0 - r * sample_uniform_phase(rng);
  }
  return z;
}

inline Complex sample_permutation_product(std::size_t n, RngStream& rng) {
  if (n == 0) throw std::invalid_argument("sample_permutation_product: n must be positive");
  Complex z = 1.0;
  for (std::size_t k = 1; k <= n; ++k)
    if (sample_bernoulli(1.0 / static_cast<double>(k), rng)) z *= 1.0 - sample_uniform_phase(rng);
  return z;
}

/// X_1 + ... + X_n with X_k ~ Bernoulli(1/k); equal in law to the number of
/// cycles of a uniform permutation of n points.
inline std::size_t sample_cycle_count_sum(std::size_t n, RngStream& rng) {
  if (n == 0) throw std::invalid_argument("sample_cycle_count_sum: n must be positive");
  std::size_t sum = 0;
  for (std::size_t k = 1; k <= n; ++k) sum += static_cast<std::size_t>(sample_bernoulli(1.0 / static_cast<double>(k), rng));
  return sum;
}

/// prod over the cycles of a uniform permutation of (1 - e^{i a_c}), one
/// fresh uniform phase per cycle.
inline Complex sample_cycle_phase_product(std::size_t n, RngStream& rng) {
  if (n == 0) throw std::invalid_argument("sample_cycle_phase_product: n must be positive");
  const std::size_t cycles = count_cycles(sample_permutation(n, rng));
  Complex z = 1.0;
  for (std::size_t c = 0; c < cycles; ++c) z *= 1.0 - sample_uniform_phase(rng);
  return z;
}

/// Beta(1, s) shape parameters of the unitary product factors, k = 1..n.
inline std::vector<std::size_t> unitary_product_beta_shapes(std::size_t n) {
  std::vector<std::size_t> s;
  for (std::size_t k = 1; k <= n; ++k) s.push_back(k - 1);
  return s;
}

/// Beta(1, s) shape parameters of |alpha_j|^2, j = 0..n-1.
inline std::vector<std::size_t> verblunsky_beta_shapes(std::size_t n) {
  std::vector<std::size_t> s;
  for (std::size_t j = 0; j < n; ++j) s.push_back(n - j - 1);
  return s;
}

/// Principal-branch log(1 - alpha). For |alpha| <= 1 the argument lies in
/// [-pi/2, pi/2] and the real part in (-inf, log 2].
inline Complex log_one_minus(Complex alpha) { return std::log(Complex{1.0} - alpha); }

struct LogProcessPath {
  std::size_t n = 0;
  std::vector<double> t_grid;
  std::vector<std::size_t> indices;  ///< floor(n t) per grid point
  std::vector<Complex> values;       ///< L_j = sum_{l<j} log(1 - alpha_l)
};

/// Partial sums L_j of per-factor logs at j = floor(n t) for each t. Only the
/// coefficients up to the largest requested index are drawn.
inline LogProcessPath sample_log_process(std::size_t n, const std::vector<double>& t_grid, RngStream& rng) {
  if (n == 0) throw std::invalid_argument("sample_log_process: n must be positive");
  LogProcessPath path;
  path.n = n;
  path.t_grid = t_grid;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double t = t_grid[i];
    if (!(t >= 0.0 && t < 1.0)) throw std::invalid_argument("sample_log_process: t must lie in [0, 1)");
    if (i > 0 && !(t > t_grid[i - 1])) throw std::invalid_argument("sample_log_process: t grid must be strictly increasing");
    path.indices.push_back(static_cast<std::size_t>(std::floor(static_cast<double>(n) * t)));
  }

  path.values.reserve(t_grid.size());
  Complex acc{};
  std::size_t drawn = 0;
  for (const std::size_t j : path.indices) {
    for (; drawn < j; ++drawn) acc += log_one_minus(sample_kn_alpha(static_cast<long long>(n - drawn - 1), rng));
    path.values.push_back(acc);
  }
  return path;
}

/// sum_{l=0}^{n-1} log(1 - alpha_l), including the unimodular last term.
inline Complex log_z_full(std::size_t n, RngStream& rng) {
  if (n == 0) throw std::invalid_argument("log_z_full: n must be positive");
  Complex acc{};
  for (std::size_t l = 0; l + 1 < n; ++l) acc += log_one_minus(sample_kn_alpha(static_cast<long long>(n - l - 1), rng));
  Complex last = sample_uniform_phase(rng);
  while (last == Complex{1.0}) last = sample_uniform_phase(rng);
  return acc + log_one_minus(last);
}

}  // namespace charlaw
