// Scalar random variates for every law the product decompositions use.
//
// All randomness comes from RngStream, a std::mt19937_64 wrapper. Streams are
// split deterministically: substream(i) is seeded with
//   splitmix64(root_seed ^ splitmix64(i + 1))
// so any (root seed, index) pair names one reproducible stream regardless of
// how work is distributed across threads.
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>

#include "charlaw/linalg.hpp"

namespace charlaw {

/// One round of the splitmix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

class RngStream {
public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  /// Independent child stream; depends only on (seed, index).
  RngStream substream(std::uint64_t index) const {
    return RngStream(splitmix64(seed_ ^ splitmix64(index + 1)));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits. Bit-exact across platforms,
  /// unlike std::uniform_real_distribution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_open_low() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }

  /// Uniform integer on [0, bound) by rejection (no modulo bias).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("RngStream::below: bound must be positive");
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

inline Complex sample_uniform_phase(RngStream& rng) {
  const double theta = 2.0 * std::numbers::pi * rng.uniform();
  return {std::cos(theta), std::sin(theta)};
}

/// Beta(1, s) by inverse CDF: X = 1 - U^{1/s}, density s (1-x)^{s-1}.
inline double sample_beta_1_s(double s, RngStream& rng) {
  if (!(s > 0.0)) throw std::invalid_argument("sample_beta_1_s: shape s must be positive");
  return -std::expm1(std::log(rng.uniform_open_low()) / s);
}

inline int sample_bernoulli(double p, RngStream& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sample_bernoulli: p outside [0,1]");
  return rng.uniform() < p ? 1 : 0;
}

/// Standard complex Gaussian: independent N(0, 1/2) parts, E|z|^2 = 1.
/// Box-Muller, one uniform pair per draw.
inline Complex sample_complex_gaussian(RngStream& rng) {
  const double radius = std::sqrt(-std::log(rng.uniform_open_low()));
  const double theta = 2.0 * std::numbers::pi * rng.uniform();
  return {radius * std::cos(theta), radius * std::sin(theta)};
}

/// Uniform point on the unit sphere of C^n.
inline ComplexVector sample_sphere_point(std::size_t n, RngStream& rng) {
  if (n == 0) throw std::invalid_argument("sample_sphere_point: n must be positive");
  for (;;) {
    ComplexVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = sample_complex_gaussian(rng);
    const double r = v.norm();
    if (r == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) v[i] /= r;
    return v;
  }
}

/// Verblunsky coefficient law for a Haar unitary: density (s/pi)(1-|z|^2)^{s-1}
/// on the disk for s >= 1, realized as e^{i theta} sqrt(Beta(1,s)); for s = 0
/// a uniform point of the unit circle.
inline Complex sample_kn_alpha(long long s, RngStream& rng) {
  if (s < 0) throw std::invalid_argument("sample_kn_alpha: s must be nonnegative");
  const Complex phase = sample_uniform_phase(rng);
  if (s == 0) return phase;
  return phase * std::sqrt(sample_beta_1_s(static_cast<double>(s), rng));
}

}  // namespace charlaw
