#include <gtest/gtest.h>

#include "scx/cq_state.hpp"
#include "scx/divergences.hpp"
#include "scx/errors.hpp"
#include "test_util.hpp"

using namespace scx;
using scx::testing::ket_projector;
using scx::testing::random_state;

namespace {

const ClassicalDistribution bern75({0.75, 0.25});
const ClassicalDistribution bern50({0.5, 0.5});

DensityOperator pure_plus() {
  ComplexVector v(2);
  v << 1.0, 1.0;
  return DensityOperator::pure(v);
}

// Direct evaluation of the sandwiched quasi-entropy with full matrix powers.
double sandwiched_direct(const ComplexMatrix& rho, const ComplexMatrix& sigma, double a) {
  const ComplexMatrix s = psd_power(sigma, (1.0 - a) / (2.0 * a));
  ComplexMatrix m = s * rho * s;
  m = 0.5 * (m + m.adjoint());
  double t = 0.0;
  const auto ev = spectral_decompose(m).eigenvalues;
  for (Eigen::Index i = 0; i < ev.size(); ++i) t += std::pow(std::max(0.0, ev(i)), a);
  return std::log2(t) / (a - 1.0);
}

}  // namespace

TEST(gen_trace_distance, examples) {
  const DensityOperator rho = pure_plus();
  EXPECT_NEAR(gen_trace_distance(rho, rho), 0.0, 1e-15);
  EXPECT_NEAR(gen_trace_distance(rho, DensityOperator(0.5 * rho.matrix())), 0.5, 1e-15);
  EXPECT_NEAR(gen_trace_distance(DensityOperator(ket_projector(2, 0)), DensityOperator(ket_projector(2, 1))), 1.0,
              1e-15);
}

TEST(purified_distance, examples) {
  const DensityOperator rho = pure_plus();
  EXPECT_NEAR(purified_distance(rho, rho), 0.0, 1e-7);
  EXPECT_NEAR(purified_distance(rho, DensityOperator(0.5 * rho.matrix())), std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(purified_distance(DensityOperator(ket_projector(2, 0)), DensityOperator(ket_projector(2, 1))), 1.0,
              1e-15);
}

TEST(distances, sandwich_and_triangle_inequality) {
  std::mt19937_64 g(21);
  for (int i = 0; i < 200; ++i) {
    const Eigen::Index d = 2 + i % 5;
    const DensityOperator a(random_state(g, d, 0.5 + 0.5 * scx::testing::uniform01(g)));
    const DensityOperator b(random_state(g, d, 0.5 + 0.5 * scx::testing::uniform01(g)));
    const DensityOperator c(random_state(g, d, 0.5 + 0.5 * scx::testing::uniform01(g)));
    const double td = gen_trace_distance(a, b);
    const double pd = purified_distance(a, b);
    ASSERT_LE(td, pd + 1e-9);
    ASSERT_LE(pd, std::sqrt(2.0 * td) + 1e-9);
    ASSERT_LE(td, gen_trace_distance(a, c) + gen_trace_distance(c, b) + 1e-9);
    ASSERT_LE(pd, purified_distance(a, c) + purified_distance(c, b) + 1e-9);
  }
}

TEST(distances, classical_matches_diagonal) {
  const ClassicalDistribution p({0.6, 0.3}), q({0.2, 0.7});
  EXPECT_NEAR(gen_trace_distance(p, q), gen_trace_distance(p.as_density(), q.as_density()), 1e-15);
  EXPECT_NEAR(purified_distance(p, q), purified_distance(p.as_density(), q.as_density()), 1e-12);
}

TEST(relative_entropy, examples) {
  EXPECT_NEAR(relative_entropy(bern75, bern75).value, 0.0, 1e-15);
  EXPECT_NEAR(relative_entropy(bern75, bern50).value, 0.18872187554086714, 1e-14);
  EXPECT_NEAR(relative_entropy(bern75.as_density(), bern50.as_density()).value, 0.18872187554086714, 1e-13);
  const auto inf = relative_entropy(bern75, ClassicalDistribution({1.0, 0.0}));
  EXPECT_FALSE(inf.finite);
  EXPECT_EQ(inf.value, INFINITY);
  EXPECT_FALSE(relative_entropy(DensityOperator(ket_projector(2, 0)), PositiveOperator(ket_projector(2, 1))).finite);
}

TEST(renyi_divergence, deterministic_bit_against_uniform) {
  const ClassicalDistribution det({1.0, 0.0});
  for (double a : {0.1, 0.3, 0.5, 0.9}) {
    EXPECT_NEAR(renyi_divergence(det, bern50, a, RenyiKind::petz).value, 1.0, 1e-14);
    EXPECT_NEAR(renyi_divergence(det.as_density(), bern50.as_density(), a, RenyiKind::sandwiched).value, 1.0, 1e-12);
  }
}

TEST(renyi_divergence, bernoulli_petz_half) {
  // (1/(a-1)) log2 sum p^a q^(1-a) at a = 1/2, evaluated with 50 digits.
  EXPECT_NEAR(renyi_divergence(bern75, bern50, 0.5, RenyiKind::petz).value, 0.10003137304700830, 1e-14);
  EXPECT_NEAR(renyi_divergence(bern75.as_density(), bern50.as_density(), 0.5, RenyiKind::petz).value,
              0.10003137304700830, 1e-13);
}

TEST(renyi_divergence, domain_and_support) {
  EXPECT_THROW(renyi_divergence(bern75, bern50, 1.0, RenyiKind::petz), DomainError);
  EXPECT_THROW(renyi_divergence(bern75, bern50, -0.5, RenyiKind::petz), DomainError);
  EXPECT_THROW(renyi_divergence(bern75, bern50, 0.5, RenyiKind::umegaki), DomainError);
  const DensityOperator zero(ket_projector(2, 0));
  const PositiveOperator one(ket_projector(2, 1));
  EXPECT_FALSE(renyi_divergence(zero, one, 2.0, RenyiKind::petz).finite);
  EXPECT_FALSE(renyi_divergence(zero, one, 2.0, RenyiKind::sandwiched).finite);
  // Partial overlap: finite below 1, infinite above.
  const ClassicalDistribution p({0.5, 0.5}), q({1.0, 0.0});
  EXPECT_TRUE(renyi_divergence(p, q, 0.5, RenyiKind::petz).finite);
  EXPECT_NEAR(renyi_divergence(p, q, 0.5, RenyiKind::petz).value, -2.0 * std::log2(std::sqrt(0.5)), 1e-14);
  EXPECT_FALSE(renyi_divergence(p, q, 1.5, RenyiKind::petz).finite);
}

TEST(renyi_divergence, sandwiched_matches_direct_powers) {
  std::mt19937_64 g(22);
  for (int i = 0; i < 50; ++i) {
    const Eigen::Index d = 2 + i % 3;
    const DensityOperator rho(random_state(g, d));
    const DensityOperator sigma(random_state(g, d));
    for (double a : {0.5, 0.8, 1.5, 2.0}) {
      ASSERT_NEAR(renyi_divergence(rho, sigma, a, RenyiKind::sandwiched).value,
                  sandwiched_direct(rho.matrix(), sigma.matrix(), a), 1e-8);
    }
  }
}

TEST(renyi_divergence, sandwiched_pure_state_closed_form) {
  // For rho = |psi><psi|: (a/(a-1)) log2 <psi| sigma^{(1-a)/a} |psi>.
  std::mt19937_64 g(23);
  for (int i = 0; i < 30; ++i) {
    const Eigen::Index d = 2 + i % 4;
    ComplexVector psi = random_state(g, d).col(0);
    psi.normalize();
    const DensityOperator rho = DensityOperator::pure(psi);
    const DensityOperator sigma(random_state(g, d));
    for (double a : {0.05, 0.1, 0.3, 3.0}) {
      const double inner = (psi.adjoint() * psd_power(sigma.matrix(), (1.0 - a) / a) * psi)(0, 0).real();
      ASSERT_NEAR(renyi_divergence(rho, sigma, a, RenyiKind::sandwiched).value, a / (a - 1.0) * std::log2(inner),
                  1e-8);
    }
  }
}

TEST(renyi_divergence, classical_sandwiched_equals_petz) {
  std::mt19937_64 g(24);
  for (int i = 0; i < 20; ++i) {
    const ClassicalDistribution p(scx::testing::random_weights(g, 4)), q(scx::testing::random_weights(g, 4));
    for (double a : {0.2, 0.7, 2.5}) {
      ASSERT_NEAR(renyi_divergence(p.as_density(), q.as_density(), a, RenyiKind::sandwiched).value,
                  renyi_divergence(p, q, a, RenyiKind::petz).value, 1e-10);
    }
  }
}

TEST(renyi_divergence, ordering_and_monotonicity) {
  std::mt19937_64 g(25);
  std::vector<double> grid;
  for (int k = 1; k <= 9; ++k) grid.push_back(k / 10.0);
  for (int k = 11; k <= 50; ++k) grid.push_back(k / 10.0);
  for (int i = 0; i < 200; ++i) {
    const Eigen::Index d = 2 + i % 5;
    const DensityOperator rho(random_state(g, d));
    const DensityOperator sigma(random_state(g, d));
    for (double a : {0.3, 0.7, 1.5, 3.0}) {
      ASSERT_LE(renyi_divergence(rho, sigma, a, RenyiKind::sandwiched).value,
                renyi_divergence(rho, sigma, a, RenyiKind::petz).value + 1e-9);
    }
    for (RenyiKind kind : {RenyiKind::petz, RenyiKind::sandwiched}) {
      double prev = -INFINITY;
      for (double a : grid) {
        const double v = renyi_divergence(rho, sigma, a, kind).value;
        ASSERT_GE(v, prev - 1e-9) << "pair " << i << " alpha " << a;
        prev = v;
      }
    }
  }
}

TEST(renyi_divergence, converges_to_relative_entropy_and_dmax) {
  std::mt19937_64 g(26);
  for (int i = 0; i < 100; ++i) {
    const Eigen::Index d = 2 + i % 5;
    const DensityOperator rho(random_state(g, d));
    const DensityOperator sigma(random_state(g, d));
    const double dv = relative_entropy(rho, sigma).value;
    for (RenyiKind kind : {RenyiKind::petz, RenyiKind::sandwiched}) {
      for (double sign : {-1.0, 1.0}) {
        const double e3 = std::abs(renyi_divergence(rho, sigma, 1.0 + sign * 1e-3, kind).value - dv);
        const double e5 = std::abs(renyi_divergence(rho, sigma, 1.0 + sign * 1e-5, kind).value - dv);
        // First-order convergence: the error shrinks with the step.
        ASSERT_LE(e5, 0.02 * e3 + 1e-9);
        ASSERT_LE(e5, 1e-3);
      }
    }
    ASSERT_NEAR(renyi_divergence(rho, sigma, 1024.0, RenyiKind::sandwiched).value,
                max_relative_entropy(rho, sigma).value, 1e-2);
  }
}

TEST(max_relative_entropy, examples) {
  EXPECT_NEAR(max_relative_entropy(bern75, bern75).value, 0.0, 1e-15);
  const ClassicalDistribution p({0.9, 0.1});
  EXPECT_NEAR(max_relative_entropy(p, bern50).value, 0.84799690655495002, 1e-14);
  EXPECT_NEAR(max_relative_entropy(p.as_density(), bern50.as_density()).value, 0.84799690655495002, 1e-12);
  EXPECT_FALSE(max_relative_entropy(bern75, ClassicalDistribution({0.0, 1.0})).finite);
  EXPECT_FALSE(max_relative_entropy(DensityOperator(ket_projector(2, 0)), PositiveOperator(ket_projector(2, 1))).finite);
}

TEST(conditional_entropy, examples) {
  const CQState independent = CQState::classical({0.25, 0.25, 0.25, 0.25}, std::vector<ClassicalDistribution>(
                                                                               4, ClassicalDistribution({0.3, 0.7})));
  for (double a : {0.3, 2.0}) {
    EXPECT_NEAR(conditional_entropy(independent, a, RenyiKind::petz), 2.0, 1e-13);
    EXPECT_NEAR(conditional_entropy(independent, a, RenyiKind::sandwiched), 2.0, 1e-13);
  }
  EXPECT_NEAR(conditional_entropy(independent, 1.0, RenyiKind::umegaki), 2.0, 1e-13);

  const CQState copy =
      CQState::classical({0.5, 0.5}, {ClassicalDistribution({1.0, 0.0}), ClassicalDistribution({0.0, 1.0})});
  EXPECT_NEAR(conditional_entropy(copy, 1.0, RenyiKind::umegaki), 0.0, 1e-15);

  const CQState bsc =
      CQState::classical({0.5, 0.5}, {ClassicalDistribution({0.89, 0.11}), ClassicalDistribution({0.11, 0.89})});
  EXPECT_NEAR(conditional_entropy(bsc, 1.0, RenyiKind::umegaki), 0.49991595816452800, 1e-14);
  EXPECT_THROW(conditional_entropy(bsc, 0.5, RenyiKind::umegaki), DomainError);
}

TEST(conditional_entropy, quantum_side_information) {
  // E holds |0> or |+>: H(X|E) = 1 - h2(cos^2(pi/8)).
  ComplexVector plus(2);
  plus << 1.0, 1.0;
  const CQState cq = CQState::quantum({0.5, 0.5}, {DensityOperator(ket_projector(2, 0)), DensityOperator::pure(plus)});
  ASSERT_EQ(cq.mode(), CQMode::quantum);
  const double c2 = std::pow(std::cos(M_PI / 8.0), 2);
  const double h2 = -c2 * std::log2(c2) - (1.0 - c2) * std::log2(1.0 - c2);
  EXPECT_NEAR(conditional_entropy(cq, 1.0, RenyiKind::umegaki), 1.0 - h2, 1e-12);
  EXPECT_LE(conditional_entropy(cq, 2.0, RenyiKind::petz), conditional_entropy(cq, 2.0, RenyiKind::sandwiched) + 1e-12);
}
