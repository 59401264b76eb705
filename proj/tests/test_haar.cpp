#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numbers>
#include <vector>

#include "charlaw/haar.hpp"
#include "charlaw/laws.hpp"
#include "charlaw/stats.hpp"
#include "oracles.hpp"

using namespace charlaw;

namespace {

std::vector<double> project(const std::vector<Complex>& v, double (*f)(Complex)) {
  std::vector<double> out;
  for (const auto& z : v) out.push_back(f(z));
  return out;
}

double re_of(Complex z) { return z.real(); }
double im_of(Complex z) { return z.imag(); }
double abs_of(Complex z) { return std::abs(z); }
double arg_of(Complex z) { return std::arg(z); }

PhasedPermutation make(std::vector<std::size_t> sigma, std::vector<Complex> phases) {
  PhasedPermutation p{std::move(sigma), std::move(phases)};
  p.validate();
  return p;
}

}  // namespace

TEST(GinibreHaar, SizeOneIsAPhase) {
  RngStream rng(1);
  std::vector<double> args;
  for (int i = 0; i < 10000; ++i) {
    const ComplexMatrix g = sample_haar_unitary_ginibre(1, rng);
    ASSERT_NEAR(std::abs(g(0, 0)), 1.0, 1e-15);
    args.push_back(std::arg(g(0, 0)));
  }
  const KsResult ks = ks_one_sample(args, [](double t) { return (t + std::numbers::pi) / (2 * std::numbers::pi); });
  EXPECT_GT(ks.p_value, 1e-3);
}

TEST(GinibreHaar, FirstEntryAndTraceMoments) {
  RngStream rng(2);
  std::vector<double> first;
  Complex trace_sum{};
  constexpr int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) {
    const ComplexMatrix g = sample_haar_unitary_ginibre(4, rng);
    first.push_back(std::norm(g(0, 0)));
    for (std::size_t k = 0; k < 4; ++k) trace_sum += g(k, k);
  }
  EXPECT_TRUE(mean_estimate(first).within(0.25, 3.0));
  EXPECT_LT(std::abs(trace_sum / static_cast<double>(kDraws)), 0.02);
}

TEST(GinibreHaar, IsUnitary) {
  RngStream rng(3);
  for (std::size_t n : {1u, 2u, 5u, 16u, 40u}) EXPECT_LT(unitarity_defect(sample_haar_unitary_ginibre(n, rng)), 1e-10);
  EXPECT_THROW(sample_haar_unitary_ginibre(0, rng), std::invalid_argument);
}

TEST(Reflection, DegenerateCaseIsIdentity) {
  const ComplexMatrix r = reflection_to(ComplexVector::unit(4, 0));
  EXPECT_EQ((r - ComplexMatrix::identity(4)).max_abs(), 0.0);
}

TEST(Reflection, MapsE1ToE2) {
  const ComplexMatrix r = reflection_to(ComplexVector::unit(2, 1));
  const ComplexVector image = mat_vec(r, ComplexVector::unit(2, 0));
  EXPECT_LT((image - ComplexVector::unit(2, 1)).norm(), 1e-15);
  EXPECT_LT(unitarity_defect(r), 1e-12);
}

TEST(Reflection, RandomSpherePointProperties) {
  RngStream rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexVector v = sample_sphere_point(5, rng);
    const ComplexMatrix r = reflection_to(v);
    EXPECT_LT((mat_vec(r, ComplexVector::unit(5, 0)) - v).norm(), 1e-10);
    EXPECT_LT(unitarity_defect(r), 1e-10);

    // x orthogonal to w = e_1 - v is fixed.
    const ComplexVector w = ComplexVector::unit(5, 0) - v;
    ComplexVector x(5);
    for (std::size_t i = 0; i < 5; ++i) x[i] = sample_complex_gaussian(rng);
    const Complex c = hermitian_inner(w, x) / hermitian_inner(w, w);
    for (std::size_t i = 0; i < 5; ++i) x[i] -= c * w[i];
    EXPECT_LT((mat_vec(r, x) - x).norm(), 1e-10);
  }
}

TEST(Reflection, Errors) {
  EXPECT_THROW(reflection_to(ComplexVector{2.0, 0.0}), std::invalid_argument);
  // Unit vector numerically indistinguishable from e_1 in its first entry
  // but with a nonzero w: 1 - conj(v_0) is far below 1e-14.
  const double tiny = 1e-9;
  const ComplexVector near{std::sqrt(1.0 - tiny * tiny), tiny};
  EXPECT_THROW(reflection_to(near), std::domain_error);
}

TEST(StabilizerEmbed, BlockStructure) {
  EXPECT_EQ((stabilizer_embed(ComplexMatrix::identity(2)) - ComplexMatrix::identity(3)).max_abs(), 0.0);
  RngStream rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix h = sample_haar_unitary_ginibre(4, rng);
    const ComplexMatrix g = stabilizer_embed(h);
    EXPECT_LT((mat_vec(g, ComplexVector::unit(5, 0)) - ComplexVector::unit(5, 0)).norm(), 1e-15);
    EXPECT_LT(std::abs(det_id_minus(g)), 1e-12);
  }
}

TEST(RecursiveHaar, SizeOneAndUnitarity) {
  RngStream rng(6);
  for (int i = 0; i < 100; ++i) {
    const ComplexMatrix g1 = sample_haar_recursive(1, rng);
    ASSERT_NEAR(std::abs(g1(0, 0)), 1.0, 1e-15);
    ASSERT_LT(unitarity_defect(sample_haar_recursive(3, rng)), 1e-9);
    ASSERT_LT(unitarity_defect(sample_haar_recursive(9, rng)), 1e-9);
  }
}

TEST(RecursiveHaar, FirstColumnIsASpherePoint) {
  RngStream rng(7);
  constexpr std::size_t n = 5;
  std::vector<double> m1, m2;
  for (int i = 0; i < 20000; ++i) {
    const ComplexMatrix g = sample_haar_recursive(n, rng);
    m1.push_back(std::norm(g(0, 0)));
    m2.push_back(std::norm(g(n - 1, 0)));
  }
  // |v_i|^2 ~ Beta(1, n-1): mean 1/n.
  EXPECT_TRUE(mean_estimate(m1).within(1.0 / n, 3.0));
  EXPECT_TRUE(mean_estimate(m2).within(1.0 / n, 3.0));
}

TEST(RecursiveHaar, AgreesWithGinibreOnDeterminantLaw) {
  const SampleBatch a = generate_batch("unitary-recursive-det", 6, 10000, 101);
  const SampleBatch b = generate_batch("unitary-ginibre-det", 6, 10000, 202);
  EXPECT_GT(ks_two_sample(project(a.values, re_of), project(b.values, re_of)).p_value, 1e-3);
}

TEST(TwoHaarSamplers, AgreeOnReImAbs) {
  for (std::size_t n : {4u, 8u}) {
    const SampleBatch a = generate_batch("unitary-recursive-det", n, 10000, 303 + n);
    const SampleBatch b = generate_batch("unitary-ginibre-det", n, 10000, 404 + n);
    for (auto f : {re_of, im_of, abs_of})
      EXPECT_GT(ks_two_sample(project(a.values, f), project(b.values, f)).p_value, 1e-3) << "n=" << n;
  }
}

TEST(FirstColumnLaw, BothHaarSamplersMatchPhaseTimesSqrtBeta) {
  for (const char* sampler : {"first-column-ginibre", "first-column-recursive"}) {
    const SampleBatch a = generate_batch(sampler, 5, 10000, 505);
    const SampleBatch b = generate_batch("first-column-law", 5, 10000, 606);
    EXPECT_GT(ks_two_sample(project(a.values, abs_of), project(b.values, abs_of)).p_value, 1e-3) << sampler;
    EXPECT_GT(ks_two_sample(project(a.values, arg_of), project(b.values, arg_of)).p_value, 1e-3) << sampler;
  }
}

TEST(PhasedPermutation, SizeOne) {
  RngStream rng(8);
  const PhasedPermutation p = sample_phased_permutation(1, rng);
  EXPECT_EQ(p.sigma, std::vector<std::size_t>{0});
  EXPECT_NEAR(std::abs(p.phases[0]), 1.0, 1e-15);
}

TEST(PhasedPermutation, UniformOverS3) {
  RngStream rng(9);
  constexpr int kDraws = 100000;
  std::map<std::vector<std::size_t>, int> freq;
  for (int i = 0; i < kDraws; ++i) {
    const PhasedPermutation p = sample_phased_permutation(3, rng);
    p.validate();
    ++freq[p.sigma];
  }
  ASSERT_EQ(freq.size(), 6u);
  const double p = 1.0 / 6.0, se = std::sqrt(p * (1 - p) / kDraws);
  for (const auto& [perm, count] : freq) EXPECT_NEAR(static_cast<double>(count) / kDraws, p, 3 * se);
}

TEST(PhasedPermutation, FixedPointMarginal) {
  RngStream rng(10);
  std::vector<double> fixed;
  for (int i = 0; i < 100000; ++i) fixed.push_back(sample_phased_permutation(5, rng).sigma[0] == 0 ? 1.0 : 0.0);
  EXPECT_TRUE(mean_estimate(fixed).within(0.2, 3.0));
}

TEST(PhasedPermutation, ValidateRejectsBadInput) {
  EXPECT_THROW(make({0, 0}, {1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(make({0, 2}, {1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(make({1, 0}, {1.0, 2.0}), std::invalid_argument);
  EXPECT_THROW(make({1, 0}, {1.0}), std::invalid_argument);
}

TEST(CycleDecompose, Identity) {
  const auto d = cycle_decompose(make({0, 1, 2, 3}, {1.0, 1.0, 1.0, 1.0}));
  EXPECT_EQ(d.count(), 4u);
  for (auto l : d.lengths()) EXPECT_EQ(l, 1u);
}

TEST(CycleDecompose, ThreeCyclePhaseIsProduct) {
  const Complex a = std::polar(1.0, 0.4), b = std::polar(1.0, 1.1), c = std::polar(1.0, -2.3);
  const auto d = cycle_decompose(make({1, 2, 0}, {a, b, c}));
  ASSERT_EQ(d.count(), 1u);
  EXPECT_EQ(d.lengths()[0], 3u);
  EXPECT_LT(std::abs(d.cycle_phases[0] - a * b * c), 1e-15);
}

TEST(CycleDecompose, PartitionProperty) {
  RngStream rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 12);
    const auto d = cycle_decompose(sample_phased_permutation(n, rng));
    std::size_t total = 0;
    std::vector<std::size_t> all;
    for (const auto& c : d.cycles) {
      total += c.size();
      all.insert(all.end(), c.begin(), c.end());
    }
    EXPECT_EQ(total, n);
    std::sort(all.begin(), all.end());
    for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(all[i], i);
  }
}

TEST(PermutationDeterminant, Examples) {
  EXPECT_EQ(det_id_minus_phased_permutation(make({0, 1, 2}, {1.0, 1.0, 1.0})), Complex{});
  const double a = 0.7, b = -1.9;
  const PhasedPermutation swap = make({1, 0}, {std::polar(1.0, a), std::polar(1.0, b)});
  const Complex expected = 1.0 - std::polar(1.0, a + b);
  EXPECT_LT(std::abs(det_id_minus_phased_permutation(swap) - expected), 1e-15);
  EXPECT_LT(std::abs(lu_det(ComplexMatrix::identity(2) - dense(swap)) - expected), 1e-15);
}

TEST(PermutationDeterminant, CycleFormulaMatchesDenseLu) {
  RngStream rng(12);
  for (std::size_t n = 2; n <= 10; ++n)
    for (int trial = 0; trial < 1000; ++trial) {
      const PhasedPermutation p = sample_phased_permutation(n, rng);
      const Complex fast = det_id_minus_phased_permutation(p);
      const Complex slow = lu_det(ComplexMatrix::identity(n) - dense(p));
      ASSERT_LT(std::abs(fast - slow), 1e-10) << "n=" << n;
    }
}

TEST(Dense, IdentityUnitarityAndPlacement) {
  EXPECT_EQ((dense(make({0, 1, 2}, {1.0, 1.0, 1.0})) - ComplexMatrix::identity(3)).max_abs(), 0.0);
  // sigma(0) = 2: row 0 carries phase_2 at column 2.
  const Complex p0 = std::polar(1.0, 0.1), p1 = std::polar(1.0, 0.2), p2 = std::polar(1.0, 0.3);
  const ComplexMatrix m = dense(make({2, 0, 1}, {p0, p1, p2}));
  EXPECT_EQ(m(0, 2), p2);
  EXPECT_EQ(m(1, 0), p0);
  EXPECT_EQ(m(2, 1), p1);
  RngStream rng(13);
  for (int i = 0; i < 100; ++i) EXPECT_LT(unitarity_defect(dense(sample_phased_permutation(7, rng))), 1e-14);
}

TEST(Dense, GroupLawHandCheckOnThree) {
  const Complex a0 = std::polar(1.0, 0.5), a1 = std::polar(1.0, 1.5), a2 = std::polar(1.0, 2.5);
  const Complex b0 = std::polar(1.0, -0.4), b1 = std::polar(1.0, 0.9), b2 = std::polar(1.0, 2.2);
  const PhasedPermutation a = make({1, 2, 0}, {a0, a1, a2});
  const PhasedPermutation b = make({0, 2, 1}, {b0, b1, b2});
  // Rows of dense(a): (0, a1, 0), (0, 0, a2), (a0, 0, 0); dense(b): (b0,0,0),(0,0,b2),(0,b1,0).
  // Product rows: (0, 0, a1 b2), (0, a2 b1, 0), (a0 b0, 0, 0).
  const ComplexMatrix expected{{0.0, 0.0, a1 * b2}, {0.0, a2 * b1, 0.0}, {a0 * b0, 0.0, 0.0}};
  EXPECT_LT((mat_mul(dense(a), dense(b)) - expected).max_abs(), 1e-15);
  EXPECT_LT((dense(compose(a, b)) - expected).max_abs(), 1e-15);
}
