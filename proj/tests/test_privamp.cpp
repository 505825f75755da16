#include <gtest/gtest.h>

#include <numeric>

#include "scx/divergences.hpp"
#include "scx/errors.hpp"
#include "scx/privamp.hpp"
#include "scx/rng.hpp"
#include "test_util.hpp"

using namespace scx;

namespace {

CQState bsc_state() {
  return CQState::classical({0.5, 0.5}, {ClassicalDistribution({0.89, 0.11}), ClassicalDistribution({0.11, 0.89})});
}

CQState uniform_independent(std::size_t x, std::vector<double> side) {
  return CQState::classical(std::vector<double>(x, 1.0 / static_cast<double>(x)),
                            std::vector<ClassicalDistribution>(x, ClassicalDistribution(side)));
}

CQState random_cq(std::mt19937_64& g, std::size_t x, std::size_t e) {
  return CQState::from_joint(x, e, scx::testing::random_weights(g, x * e));
}

// Generalized trace distance between f(X)E and the uniform key times p_E,
// straight from the joint weights.
double trace_error_oracle(const CQState& cq, const std::vector<std::size_t>& f, std::size_t z) {
  const auto joint = cq.joint_weights();
  const auto side = cq.side_marginal_weights();
  const std::size_t e = cq.e_dim();
  std::vector<double> hashed(z * e, 0.0);
  for (std::size_t x = 0; x < cq.x_size(); ++x) {
    for (std::size_t k = 0; k < e; ++k) hashed[f[x] * e + k] += joint[x * e + k];
  }
  double l1 = 0.0;
  for (std::size_t a = 0; a < z; ++a) {
    for (std::size_t k = 0; k < e; ++k) l1 += std::abs(hashed[a * e + k] - side[k] / static_cast<double>(z));
  }
  return 0.5 * l1;
}

}  // namespace

TEST(hash_function, affine_modular_table) {
  EXPECT_EQ(smallest_prime_at_least(0), 2u);
  EXPECT_EQ(smallest_prime_at_least(2), 2u);
  EXPECT_EQ(smallest_prime_at_least(4), 5u);
  EXPECT_EQ(smallest_prime_at_least(8), 11u);
  EXPECT_EQ(smallest_prime_at_least(1024), 1031u);
  const HashFunction h = HashFunction::affine_modular(8, 3, 4, 7);
  for (std::size_t x = 0; x < 8; ++x) EXPECT_EQ(h(x), ((4 * x + 7) % 11) % 3);
  EXPECT_THROW(HashFunction({0, 2}, 2), ValidationError);
}

TEST(apply_hash, examples) {
  const CQState bsc = bsc_state();
  EXPECT_EQ(apply_hash(bsc, HashFunction::identity(2)).joint_weights(), bsc.joint_weights());

  const CQState u4 = uniform_independent(4, {1.0});
  const CQState parity = apply_hash(u4, HashFunction({0, 1, 0, 1}, 2));
  ASSERT_EQ(parity.x_size(), 2u);
  EXPECT_NEAR(parity.probs()[0], 0.5, 1e-15);
  EXPECT_NEAR(parity.probs()[1], 0.5, 1e-15);

  const CQState constant = apply_hash(bsc, HashFunction({1, 1}, 2));
  EXPECT_NEAR(constant.probs()[0], 0.0, 0.0);
  EXPECT_NEAR(constant.probs()[1], 1.0, 1e-15);
  EXPECT_NEAR(constant.classical_conditionals()[1][0], 0.5, 1e-15);
}

TEST(apply_hash, preserves_side_marginal) {
  std::mt19937_64 g(51);
  for (int i = 0; i < 50; ++i) {
    const CQState cq = random_cq(g, 5, 3);
    std::vector<std::size_t> table(5);
    for (auto& t : table) t = static_cast<std::size_t>(g() % 3);
    const auto before = cq.side_marginal_weights();
    const auto after = apply_hash(cq, HashFunction(table, 3)).side_marginal_weights();
    for (std::size_t k = 0; k < 3; ++k) ASSERT_NEAR(before[k], after[k], 1e-12);
  }
}

TEST(conversion_error, examples) {
  const CQState u4 = uniform_independent(4, {0.3, 0.7});
  EXPECT_NEAR(conversion_error(u4, HashFunction({0, 1, 0, 1}, 2), Metric::trace), 0.0, 1e-15);
  EXPECT_NEAR(conversion_error(u4, HashFunction({0, 1, 0, 1}, 2), Metric::purified), 0.0, 1e-7);

  const CQState point = CQState::classical({1.0, 0.0}, std::vector<ClassicalDistribution>(2, ClassicalDistribution({1.0})));
  for (const auto& t : std::vector<std::vector<std::size_t>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}}) {
    EXPECT_NEAR(conversion_error(point, HashFunction(t, 2), Metric::trace), 0.5, 1e-15);
  }
}

TEST(conversion_error, purified_dominates_trace) {
  std::mt19937_64 g(52);
  for (int i = 0; i < 100; ++i) {
    const CQState cq = random_cq(g, 4, 2 + static_cast<std::size_t>(i % 2));
    std::vector<std::size_t> table(4);
    for (auto& t : table) t = static_cast<std::size_t>(g() % 2);
    const HashFunction f(table, 2);
    const double t = conversion_error(cq, f, Metric::trace);
    const double p = conversion_error(cq, f, Metric::purified);
    ASSERT_NEAR(t, trace_error_oracle(cq, table, 2), 1e-12);
    ASSERT_LE(t, p + 1e-9);
    ASSERT_LE(p, std::sqrt(2.0 * t) + 1e-9);
  }
}

TEST(conversion_error, quantum_matches_classical_on_diagonal_states) {
  std::mt19937_64 g(53);
  for (int i = 0; i < 10; ++i) {
    const CQState cls = random_cq(g, 3, 2);
    std::vector<DensityOperator> conds;
    for (const auto& c : cls.classical_conditionals()) {
      // Rotate every conditional by the same unitary; distances are invariant.
      ComplexMatrix u(2, 2);
      u << std::cos(0.3), -std::sin(0.3), std::sin(0.3), std::cos(0.3);
      conds.emplace_back(u * diagonal_matrix(c.weights()) * u.adjoint());
    }
    const CQState qu = CQState::quantum(cls.probs(), conds);
    ASSERT_EQ(qu.mode(), CQMode::quantum);
    const HashFunction f({0, 1, 0}, 2);
    for (Metric m : {Metric::trace, Metric::purified}) {
      ASSERT_NEAR(conversion_error(qu, f, m), conversion_error(cls, f, m), 1e-9);
    }
  }
}

TEST(min_conversion_exhaustive, examples) {
  const CQState point = CQState::classical({1.0, 0.0}, std::vector<ClassicalDistribution>(2, ClassicalDistribution({1.0})));
  EXPECT_NEAR(min_conversion_exhaustive(point, 2, Metric::trace).error, 0.5, 1e-15);
  const CQState u4 = uniform_independent(4, {0.5, 0.5});
  const ConversionReport r = min_conversion_exhaustive(u4, 2, Metric::trace);
  EXPECT_NEAR(r.error, 0.0, 1e-15);
  EXPECT_TRUE(r.exhaustive);
  ASSERT_TRUE(r.hash.has_value());

  // All four functions on {0, 1}.
  const CQState bsc = bsc_state();
  double best = INFINITY;
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) best = std::min(best, trace_error_oracle(bsc, {a, b}, 2));
  }
  EXPECT_NEAR(best, 0.39, 1e-15);
  EXPECT_NEAR(min_conversion_exhaustive(bsc, 2, Metric::trace).error, best, 1e-15);
}

TEST(min_conversion_exhaustive, function_budget) {
  const CQState big = uniform_independent(24, {1.0});
  EXPECT_THROW(min_conversion_exhaustive(big, 2, Metric::trace), ResourceError);
}

TEST(min_or_avg_conversion_sampled, bounded_by_exhaustive_and_reproducible) {
  const CQState b2 = bsc_state().tensor_power(2);
  const double ex = min_conversion_exhaustive(b2, 2, Metric::trace).error;
  const ConversionReport mn = min_or_avg_conversion_sampled(b2, 2, 50, kDefaultSeed, Aggregate::min, Metric::trace);
  const ConversionReport mean = min_or_avg_conversion_sampled(b2, 2, 50, kDefaultSeed, Aggregate::mean, Metric::trace);
  EXPECT_GE(mn.error, ex - 1e-15);
  EXPECT_GE(mean.error, mn.error);
  EXPECT_EQ(mn.samples, 50u);
  EXPECT_FALSE(mn.exhaustive);

  // Recorded from the first run of the sampler.
  EXPECT_DOUBLE_EQ(mn.error, 0.30420000000000003);
  EXPECT_DOUBLE_EQ(mean.error, 0.37293900000000024);
  EXPECT_DOUBLE_EQ(
      min_or_avg_conversion_sampled(b2, 2, 50, kDefaultSeed, Aggregate::mean, Metric::purified).error,
      0.42106423315669134);
  EXPECT_EQ(min_or_avg_conversion_sampled(b2, 2, 50, 7, Aggregate::mean, Metric::trace).error,
            min_or_avg_conversion_sampled(b2, 2, 50, 7, Aggregate::mean, Metric::trace).error);

  std::mt19937_64 g(54);
  for (int i = 0; i < 20; ++i) {
    const CQState cq = random_cq(g, 5, 2);
    const double exh = min_conversion_exhaustive(cq, 3, Metric::trace).error;
    ASSERT_GE(min_or_avg_conversion_sampled(cq, 3, 40, g(), Aggregate::min, Metric::trace).error, exh - 1e-15);
  }
}

TEST(key_length_bruteforce, examples) {
  const CQState u4 = uniform_independent(4, {0.5, 0.5});
  EXPECT_NEAR(key_length_bruteforce(u4, 0.0, Metric::trace).bits, 2.0, 1e-15);
  EXPECT_NEAR(key_length_bruteforce(bsc_state(), 1.0, Metric::trace).bits, 1.0, 1e-15);
  const CQState point = CQState::classical({1.0, 0.0}, std::vector<ClassicalDistribution>(2, ClassicalDistribution({1.0})));
  const KeyLength k = key_length_bruteforce(point, 0.4, Metric::trace);
  EXPECT_EQ(k.z_size, 1u);
  EXPECT_EQ(k.bits, 0.0);
}

TEST(theorem2_bounds, examples) {
  const CQState bsc = bsc_state();
  const Theorem2Bounds below = theorem2_bounds(bsc, 0.45);
  EXPECT_EQ(below.purified_bound, 0.0);
  EXPECT_EQ(below.trace_bound, 0.0);

  const CQState u4 = uniform_independent(4, {0.2, 0.8});
  const Theorem2Bounds lin = theorem2_bounds(u4, 3.0);
  EXPECT_NEAR(lin.purified_bound, 1.0, 1e-12);
  EXPECT_NEAR(lin.trace_bound, 0.5, 1e-12);

  // (1 - a) R - log2(0.89^a + 0.11^a) on a dense grid.
  double oracle = -INFINITY;
  for (int k = 0; k <= 100000; ++k) {
    const double a = k / 100000.0;
    oracle = std::max(oracle, (1.0 - a) * 0.8 - std::log2(std::pow(0.89, a) + std::pow(0.11, a)));
  }
  EXPECT_NEAR(oracle, 0.059498208556872078, 1e-9);
  const Theorem2Bounds b = theorem2_bounds(bsc, 0.8);
  EXPECT_NEAR(b.purified_bound, oracle, 1e-6);
  EXPECT_NEAR(b.trace_bound, oracle / 2.0, 1e-6);
}

TEST(key_size, floors_the_rate) {
  EXPECT_EQ(key_size(1, 0.8), 1u);
  EXPECT_EQ(key_size(2, 0.8), 3u);
  EXPECT_EQ(key_size(3, 0.8), 5u);
  EXPECT_EQ(key_size(10, 1.0), 1024u);
  EXPECT_NEAR(log2_key_size(3, 0.8), std::log2(5.0), 1e-15);
  EXPECT_THROW(key_size(100, 0.8), ResourceError);
}

TEST(pa_epsilon_floor, examples) {
  std::mt19937_64 g(55);
  for (int i = 0; i < 20; ++i) {
    const CQState cq = random_cq(g, 3, 2);
    const auto joint = cq.joint_weights();
    const auto side = cq.side_marginal_weights();
    double direct = 0.0;
    for (std::size_t x = 0; x < 3; ++x) {
      for (std::size_t e = 0; e < 2; ++e) direct += std::max(0.0, joint[x * 2 + e] - side[e]);
    }
    ASSERT_NEAR(pa_epsilon_floor(cq, 1, 0.0).eps, direct, 1e-14);
  }
  EXPECT_NEAR(pa_epsilon_floor(uniform_independent(4, {0.4, 0.6}), 1, 2.0).eps, 0.0, 1e-15);
  EXPECT_NEAR(pa_epsilon_floor(bsc_state(), 1, 0.8).log2_one_minus_eps, -0.54719547137411521, 1e-13);
}

TEST(pa_epsilon_floor, matches_string_enumeration) {
  const CQState bsc = bsc_state();
  const int n = 8;
  const CQState big = bsc.tensor_power(n);
  const auto joint = big.joint_weights();
  const auto side = big.side_marginal_weights();
  const double scale = std::exp2(-n * 0.8);
  double kept = 0.0;
  for (std::size_t x = 0; x < big.x_size(); ++x) {
    for (std::size_t e = 0; e < big.e_dim(); ++e) kept += std::min(joint[x * big.e_dim() + e], scale * side[e]);
  }
  const SmoothingValue v = pa_epsilon_floor(bsc, n, 0.8);
  EXPECT_NEAR(v.log2_one_minus_eps, std::log2(kept), 1e-12);
  EXPECT_NEAR(v.log2_one_minus_eps, -1.6273634648898028, 1e-12);
}

TEST(pa_epsilon_floor, large_n_values) {
  const CQState bsc = bsc_state();
  EXPECT_NEAR(pa_epsilon_floor(bsc, 100, 0.8).log2_one_minus_eps, -8.2722576975575415, 1e-10);
  EXPECT_NEAR(pa_epsilon_floor(bsc, 200, 0.8).log2_one_minus_eps, -14.705276610798253, 1e-10);
  EXPECT_NEAR(pa_epsilon_floor(bsc, 300, 0.8).log2_one_minus_eps, -20.956071672539104, 1e-10);
}

TEST(pa_epsilon_floor, bounds_every_sampled_hash) {
  const CQState bsc = bsc_state();
  for (int n = 1; n <= 3; ++n) {
    const CQState cq = bsc.tensor_power(n);
    const std::size_t z = key_size(n, 0.8);
    const double floor_eps = pa_epsilon_floor(bsc, n, 0.8, true).eps;
    const double exhaustive = min_conversion_exhaustive(cq, z, Metric::purified).error;
    EXPECT_GE(exhaustive, floor_eps - 1e-9) << "n = " << n;
  }
}
