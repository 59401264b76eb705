// Named samplers of det(Id - G)-type scalars and the comparison engine that
// checks two of them for equality in law.
#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "charlaw/batch.hpp"
#include "charlaw/haar.hpp"
#include "charlaw/linalg.hpp"
#include "charlaw/opuc.hpp"
#include "charlaw/product_laws.hpp"
#include "charlaw/random.hpp"
#include "charlaw/report.hpp"
#include "charlaw/stats.hpp"

namespace charlaw {

/// Exact first and second moments of a sampler's output at size n.
struct KnownMoments {
  Complex mean;
  double abs2;
};

struct SamplerInfo {
  std::string id;
  std::string description;
  std::function<Complex(std::size_t, RngStream&)> draw;
  std::function<KnownMoments(std::size_t)> moments;
};

inline Complex det_id_minus(const ComplexMatrix& g) {
  return lu_det(ComplexMatrix::identity(g.size()) - g);
}

namespace detail {

inline KnownMoments determinant_moments(std::size_t n) { return {Complex{1.0}, static_cast<double>(n + 1)}; }
inline KnownMoments first_column_moments(std::size_t n) { return {Complex{}, 1.0 / static_cast<double>(n)}; }

// (1 - e^{i theta} sqrt(Beta(1, n-1))) det(Id_{n-1} - H), H Haar on U(n-1).
inline Complex one_step_factorized(std::size_t n, RngStream& rng) {
  const Complex phase = sample_uniform_phase(rng);
  const double r = n == 1 ? 1.0 : std::sqrt(sample_beta_1_s(static_cast<double>(n - 1), rng));
  const Complex rest = n == 1 ? Complex{1.0} : det_id_minus(sample_haar_unitary_ginibre(n - 1, rng));
  return (1.0 - phase * r) * rest;
}

inline Complex first_column_law(std::size_t n, RngStream& rng) {
  const Complex phase = sample_uniform_phase(rng);
  if (n == 1) return phase;
  return phase * std::sqrt(sample_beta_1_s(static_cast<double>(n - 1), rng));
}

}  // namespace detail

/// All registered samplers, keyed by id.
inline const std::map<std::string, SamplerInfo>& sampler_registry() {
  static const std::map<std::string, SamplerInfo> registry = [] {
    std::map<std::string, SamplerInfo> r;
    auto add = [&r](SamplerInfo info) { r.emplace(info.id, std::move(info)); };
    add({"unitary-ginibre-det", "det(Id - G), G Haar via Ginibre QR, LU determinant",
         [](std::size_t n, RngStream& rng) { return det_id_minus(sample_haar_unitary_ginibre(n, rng)); },
         detail::determinant_moments});
    add({"unitary-recursive-det", "det(Id - G), G Haar via recursive reflections",
         [](std::size_t n, RngStream& rng) { return det_id_minus(sample_haar_recursive(n, rng)); },
         detail::determinant_moments});
    add({"unitary-product", "prod (1 - e^{i theta_k} sqrt(Beta(1,k-1))), O(n)",
         [](std::size_t n, RngStream& rng) { return sample_unitary_product(n, rng); },
         detail::determinant_moments});
    add({"permutation-det", "det(Id - S), S uniform phased permutation, cycle formula",
         [](std::size_t n, RngStream& rng) { return det_id_minus_phased_permutation(sample_phased_permutation(n, rng)); },
         detail::determinant_moments});
    add({"permutation-product", "prod (1 - e^{i theta_k} X_k), X_k ~ Bernoulli(1/k), O(n)",
         [](std::size_t n, RngStream& rng) { return sample_permutation_product(n, rng); },
         detail::determinant_moments});
    add({"verblunsky-product", "Phi_n(1) by the Szego recursion at z = 1 from sampled Verblunsky coefficients",
         [](std::size_t n, RngStream& rng) { return phi_at_one(sample_verblunsky_kn(n, rng)).back(); },
         detail::determinant_moments});
    add({"verblunsky-log-product", "exp(sum log(1 - alpha_l)), principal branch per factor",
         [](std::size_t n, RngStream& rng) { return std::exp(log_z_full(n, rng)); },
         detail::determinant_moments});
    add({"one-step-factorized", "(1 - e^{i theta} sqrt(Beta(1,n-1))) det(Id_{n-1} - H), H Haar on U(n-1)",
         detail::one_step_factorized, detail::determinant_moments});
    add({"cycle-phase-product", "prod over cycles of a uniform permutation of (1 - e^{i a}), fresh phases",
         [](std::size_t n, RngStream& rng) { return sample_cycle_phase_product(n, rng); },
         detail::determinant_moments});
    add({"first-column-ginibre", "<e_1, G e_1>, G Haar via Ginibre QR",
         [](std::size_t n, RngStream& rng) { return sample_haar_unitary_ginibre(n, rng)(0, 0); },
         detail::first_column_moments});
    add({"first-column-recursive", "<e_1, G e_1>, G Haar via recursive reflections",
         [](std::size_t n, RngStream& rng) { return sample_haar_recursive(n, rng)(0, 0); },
         detail::first_column_moments});
    add({"first-column-law", "e^{i theta} sqrt(Beta(1, n-1))", detail::first_column_law,
         detail::first_column_moments});
    return r;
  }();
  return registry;
}

inline const SamplerInfo& find_sampler(const std::string& id) {
  const auto& reg = sampler_registry();
  const auto it = reg.find(id);
  if (it == reg.end()) throw std::invalid_argument("unknown sampler id: " + id);
  return it->second;
}

inline SampleBatch generate_batch(const std::string& sampler_id, std::size_t n, std::size_t count, std::uint64_t seed,
                                  unsigned workers = 1) {
  const SamplerInfo& info = find_sampler(sampler_id);
  if (n == 0) throw std::invalid_argument("generate_batch: n must be positive");
  SampleBatch batch{sampler_id, n, seed, {}};
  batch.values = generate_parallel<Complex>(count, seed, workers, [&](RngStream& rng) { return info.draw(n, rng); });
  return batch;
}

/// Inputs of one equality-in-law comparison.
struct ComparisonDescriptor {
  std::string test_id;
  std::string left;
  std::string right;
  std::size_t n_left = 0;
  std::size_t n_right = 0;
  std::size_t count = 10000;
  std::uint64_t seed = 0;
  double level = 1e-3;
  unsigned workers = 1;
  bool include_arg = false;
  /// Check each side's mean and E|Z|^2 against the left sampler's exact
  /// values at n_left, with 3-SE bands.
  bool check_moments = true;
};

struct NamedComparison {
  std::string name;
  std::string left;
  std::string right;
  bool include_arg;
  std::string description;
};

/// The named comparisons, one per equality in law.
inline const std::vector<NamedComparison>& named_comparisons() {
  static const std::vector<NamedComparison> list = {
      {"thm11", "unitary-ginibre-det", "unitary-recursive-det", false,
       "recursive reflection construction of Haar measure vs Ginibre QR, on det(Id - G)"},
      {"thm12", "unitary-ginibre-det", "one-step-factorized", false,
       "det(Id_n - G) vs (1 - <e_1, G' e_1>) det(Id_{n-1} - H)"},
      {"cor11", "unitary-ginibre-det", "unitary-product", false,
       "det(Id - G) vs prod (1 - e^{i theta_k} sqrt(Beta(1,k-1)))"},
      {"cor12", "permutation-det", "permutation-product", false,
       "det(Id - S) on phased permutations vs prod (1 - e^{i theta_k} X_k)"},
      {"atj", "unitary-ginibre-det", "verblunsky-product", false, "det(Id - G) vs prod (1 - alpha_j)"},
      {"remark-product", "permutation-product", "cycle-phase-product", false,
       "prod (1 - e^{i theta_k} X_k) vs prod over cycles (1 - e^{i a_k})"},
      {"first-column", "first-column-ginibre", "first-column-law", true,
       "<e_1, G e_1> vs e^{i theta} sqrt(Beta(1, n-1))"},
      {"log-product", "unitary-product", "verblunsky-log-product", false,
       "prod (1 - e^{i theta_k} sqrt(Beta(1,k-1))) vs exp(sum log(1 - alpha_j))"},
  };
  return list;
}

inline ComparisonDescriptor make_descriptor(const std::string& name, std::size_t n, std::size_t count,
                                            std::uint64_t seed, double level = 1e-3, unsigned workers = 1) {
  for (const auto& c : named_comparisons())
    if (c.name == name) return {c.name, c.left, c.right, n, n, count, seed, level, workers, c.include_arg, true};
  throw std::invalid_argument("unknown comparison: " + name);
}

namespace detail {

using Functional = double (*)(Complex);

inline std::vector<double> apply(const std::vector<Complex>& v, Functional f) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& z : v) out.push_back(f(z));
  return out;
}

inline double re_of(Complex z) { return z.real(); }
inline double im_of(Complex z) { return z.imag(); }
inline double abs_of(Complex z) { return std::abs(z); }
inline double arg_of(Complex z) { return std::arg(z); }
inline double abs2_of(Complex z) { return std::norm(z); }

inline MomentResult band_check(std::string name, Estimate e, double target) {
  MomentResult m{std::move(name), e.value, e.standard_error, target, 3.0 * e.standard_error, false};
  m.verdict = std::abs(e.value - target) <= m.band;
  return m;
}

inline MomentResult tolerance_check(std::string name, Estimate e, double target, double tolerance) {
  MomentResult m{std::move(name), e.value, e.standard_error, target, tolerance, false};
  m.verdict = std::abs(e.value - target) <= tolerance;
  return m;
}

inline double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace detail

/// Draws both batches and applies coordinate-wise two-sample KS (Re, Im, |.|
/// and optionally arg) plus 3-SE moment bands. Pass iff every p-value exceeds
/// the level and every moment lies in its band.
inline TestReport compare_laws(const ComparisonDescriptor& d) {
  const auto start = std::chrono::steady_clock::now();
  const RngStream root(d.seed);
  const std::uint64_t left_seed = root.substream(0).seed();
  const std::uint64_t right_seed = root.substream(1).seed();
  const SampleBatch a = generate_batch(d.left, d.n_left, d.count, left_seed, d.workers);
  const SampleBatch b = generate_batch(d.right, d.n_right, d.count, right_seed, d.workers);

  TestReport report;
  report.test_id = d.test_id;

  std::vector<std::pair<std::string, detail::Functional>> functionals = {
      {"re", detail::re_of}, {"im", detail::im_of}, {"abs", detail::abs_of}};
  if (d.include_arg) functionals.emplace_back("arg", detail::arg_of);
  for (const auto& [name, f] : functionals) {
    const KsResult ks = ks_two_sample(detail::apply(a.values, f), detail::apply(b.values, f));
    report.functionals.push_back({name, ks.statistic, ks.p_value, ks.p_value > d.level});
  }

  if (d.check_moments) {
    const KnownMoments target = find_sampler(d.left).moments(d.n_left);
    for (const auto* side : {&a, &b}) {
      const std::string prefix = side == &a ? "left." : "right.";
      report.moments.push_back(
          detail::band_check(prefix + "mean_re", mean_estimate(detail::apply(side->values, detail::re_of)), target.mean.real()));
      report.moments.push_back(
          detail::band_check(prefix + "mean_im", mean_estimate(detail::apply(side->values, detail::im_of)), target.mean.imag()));
      report.moments.push_back(
          detail::band_check(prefix + "abs2", mean_estimate(detail::apply(side->values, detail::abs2_of)), target.abs2));
    }
  }

  report.finalize();
  report.metadata = {
      {"kind", "compare"},
      {"left", {{"sampler", d.left}, {"n", d.n_left}, {"seed", left_seed}, {"count", a.count()}}},
      {"right", {{"sampler", d.right}, {"n", d.n_right}, {"seed", right_seed}, {"count", b.count()}}},
      {"seed", d.seed},
      {"level", d.level},
      {"workers", d.workers},
      {"wall_time_seconds", detail::seconds_since(start)},
  };
  return report;
}

/// Variances of Re and Im log Z at two sizes (O(n) sampler) and their
/// differences against (1/2) log(n_large / n_small), plus a KS normality
/// check of standardized Re log Z at n_large.
inline TestReport variance_scaling_report(std::size_t n_small, std::size_t n_large, std::size_t paths,
                                          std::uint64_t seed, unsigned workers = 1, double tolerance = 0.1,
                                          double level = 1e-3) {
  if (n_small == 0 || n_large < n_small) throw std::invalid_argument("variance_scaling_report: need 0 < n_small <= n_large");
  if (paths < 2) throw std::invalid_argument("variance_scaling_report: need at least two paths");
  const auto start = std::chrono::steady_clock::now();
  const RngStream root(seed);
  const std::uint64_t seed_small = root.substream(0).seed();
  const std::uint64_t seed_large = root.substream(1).seed();
  auto draw_logs = [&](std::size_t n, std::uint64_t s) {
    return generate_parallel<Complex>(paths, s, workers, [n](RngStream& rng) { return log_z_full(n, rng); });
  };
  const std::vector<Complex> small = draw_logs(n_small, seed_small);
  const std::vector<Complex> large = n_large == n_small ? small : draw_logs(n_large, seed_large);

  const double target = 0.5 * std::log(static_cast<double>(n_large) / static_cast<double>(n_small));
  TestReport report;
  report.test_id = "variance-scaling";

  for (const auto& [name, f] : {std::pair{std::string("re"), detail::re_of}, std::pair{std::string("im"), detail::im_of}}) {
    const Estimate vs = variance_estimate(detail::apply(small, f));
    const Estimate vl = variance_estimate(detail::apply(large, f));
    const Estimate diff{vl.value - vs.value,
                        n_large == n_small ? 0.0 : std::hypot(vl.standard_error, vs.standard_error)};
    report.moments.push_back({"var_" + name + "_n_small", vs.value, vs.standard_error, std::nullopt, std::nullopt, true});
    report.moments.push_back({"var_" + name + "_n_large", vl.value, vl.standard_error, std::nullopt, std::nullopt, true});
    report.moments.push_back(detail::tolerance_check("var_" + name + "_difference", diff, target, tolerance));
  }

  std::vector<double> re = detail::apply(large, detail::re_of);
  const Estimate mean = mean_estimate(re);
  const double sd = std::sqrt(variance_estimate(re).value);
  for (double& x : re) x = (x - mean.value) / sd;
  const KsResult ks = ks_one_sample(re, normal_cdf);
  report.functionals.push_back({"normality_re_standardized", ks.statistic, ks.p_value, ks.p_value > level});

  report.finalize();
  report.metadata = {
      {"kind", "clt"},       {"n_small", n_small}, {"n_large", n_large}, {"paths", paths},
      {"seed", seed},        {"level", level},     {"tolerance", tolerance}, {"workers", workers},
      {"wall_time_seconds", detail::seconds_since(start)},
  };
  return report;
}

/// Empirical cycle-count law of uniform permutations and of the Bernoulli
/// sum X_1 + ... + X_n, each against the exact Stirling law (n <= 12) by
/// total variation, and the identity E[2^k] = n + 1 for both.
inline TestReport cycle_count_report(std::size_t n, std::size_t count, std::uint64_t seed, unsigned workers = 1,
                                     double tv_threshold = 0.01) {
  if (n == 0) throw std::invalid_argument("cycle_count_report: n must be positive");
  const auto start = std::chrono::steady_clock::now();
  const RngStream root(seed);
  const std::uint64_t perm_seed = root.substream(0).seed();
  const std::uint64_t sum_seed = root.substream(1).seed();
  const auto perm = generate_parallel<std::size_t>(
      count, perm_seed, workers, [n](RngStream& rng) { return count_cycles(sample_permutation(n, rng)); });
  const auto sums = generate_parallel<std::size_t>(
      count, sum_seed, workers, [n](RngStream& rng) { return sample_cycle_count_sum(n, rng); });

  TestReport report;
  report.test_id = "cycles";
  json laws = json::object();
  if (n <= 12) {
    const std::vector<double> exact = cycle_count_exact_law(static_cast<int>(n));
    const std::vector<double> ep = empirical_law(perm, n);
    const std::vector<double> es = empirical_law(sums, n);
    report.moments.push_back(detail::tolerance_check("permutation.tv_distance", {total_variation(ep, exact), 0.0}, 0.0, tv_threshold));
    report.moments.push_back(detail::tolerance_check("bernoulli_sum.tv_distance", {total_variation(es, exact), 0.0}, 0.0, tv_threshold));
    laws = {{"exact", exact}, {"permutation", ep}, {"bernoulli_sum", es}};
  }
  auto mellin = [](const std::vector<std::size_t>& k) {
    std::vector<double> v;
    v.reserve(k.size());
    for (std::size_t x : k) v.push_back(std::ldexp(1.0, static_cast<int>(x)));
    return mean_estimate(v);
  };
  report.moments.push_back(detail::band_check("permutation.mellin_2", mellin(perm), static_cast<double>(n + 1)));
  report.moments.push_back(detail::band_check("bernoulli_sum.mellin_2", mellin(sums), static_cast<double>(n + 1)));

  report.finalize();
  report.metadata = {
      {"kind", "cycles"}, {"n", n},         {"count", count},        {"seed", seed},
      {"workers", workers}, {"laws", laws}, {"tv_threshold", tv_threshold},
      {"wall_time_seconds", detail::seconds_since(start)},
  };
  return report;
}

/// Var(Re L) at t_var against -(1/2) log(1 - t_var), and the correlation of
/// Re increments over (0, t_a] and (t_a, t_b].
inline TestReport process_scaling_report(std::size_t n, std::size_t paths, std::uint64_t seed, unsigned workers = 1,
                                         double t_var = 0.5, double t_a = 0.3, double t_b = 0.6,
                                         double tolerance = 0.02) {
  if (!(0.0 < t_a && t_a < t_b && t_b < 1.0 && t_var > 0.0 && t_var < 1.0))
    throw std::invalid_argument("process_scaling_report: need 0 < t_a < t_b < 1 and 0 < t_var < 1");
  const auto start = std::chrono::steady_clock::now();
  std::vector<double> grid = {t_a, t_var, t_b};
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  const auto paths_out = generate_parallel<LogProcessPath>(
      paths, seed, workers, [&](RngStream& rng) { return sample_log_process(n, grid, rng); });

  auto value_at = [&](const LogProcessPath& p, double t) {
    for (std::size_t i = 0; i < p.t_grid.size(); ++i)
      if (p.t_grid[i] == t) return p.values[i];
    throw std::logic_error("process_scaling_report: grid point missing");
  };
  std::vector<double> at_var, inc_a, inc_b;
  for (const auto& p : paths_out) {
    at_var.push_back(value_at(p, t_var).real());
    const double la = value_at(p, t_a).real();
    inc_a.push_back(la);
    inc_b.push_back(value_at(p, t_b).real() - la);
  }

  TestReport report;
  report.test_id = "process";
  report.moments.push_back(
      detail::tolerance_check("var_re_at_t", variance_estimate(at_var), -0.5 * std::log1p(-t_var), tolerance));
  report.moments.push_back(detail::tolerance_check(
      "increment_correlation_re", {correlation(inc_a, inc_b), 1.0 / std::sqrt(static_cast<double>(paths))}, 0.0, tolerance));
  report.finalize();
  report.metadata = {
      {"kind", "process"}, {"n", n},     {"paths", paths}, {"seed", seed}, {"workers", workers},
      {"t_var", t_var},    {"t_a", t_a}, {"t_b", t_b},     {"tolerance", tolerance},
      {"wall_time_seconds", detail::seconds_since(start)},
  };
  return report;
}

}  // namespace charlaw
