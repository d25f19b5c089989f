#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "stochhyp/errors.hpp"
#include "stochhyp/gpc_core.hpp"

using namespace stochhyp;
using namespace stochhyp::gpc;

namespace {

// Closed-form Jacobi matrix of z in the orthonormal Legendre basis.
double jacobi_entry(int j, int k) {
  if (std::abs(j - k) != 1) return 0.0;
  const int lo = std::min(j, k);
  return (lo + 1) / std::sqrt((2.0 * lo + 1) * (2.0 * lo + 3));
}

double monomial_moment(int d) { return d % 2 == 0 ? 1.0 / (d + 1) : 0.0; }

}  // namespace

TEST(Basis, ExamplesFromRecurrence) {
  const OrthonormalBasis basis(4);
  EXPECT_DOUBLE_EQ(basis.eval(0, 0.7), 1.0);
  EXPECT_NEAR(basis.eval(1, 0.5), std::sqrt(3.0) * 0.5, 1e-15);
  EXPECT_NEAR(basis.eval(2, 1.0), std::sqrt(5.0), 1e-14);
  // L_3(z) = (5z^3 - 3z)/2
  const double z = -0.3;
  EXPECT_NEAR(basis.eval(3, z), std::sqrt(7.0) * 0.5 * (5 * z * z * z - 3 * z), 1e-14);
}

TEST(Basis, DomainErrors) {
  const OrthonormalBasis basis(3);
  EXPECT_THROW(basis.eval(4, 0.0), DomainError);
  EXPECT_THROW(basis.eval(-1, 0.0), DomainError);
  EXPECT_THROW(basis.eval(1, 1.5), DomainError);
  EXPECT_THROW(OrthonormalBasis(-1), DomainError);
}

TEST(Basis, Orthonormal) {
  const int K = 12;
  const OrthonormalBasis basis(K);
  const auto rule = gauss_rule(K + 1);
  for (int i = 0; i <= K; ++i) {
    for (int j = 0; j <= K; ++j) {
      double acc = 0.0;
      for (std::size_t m = 0; m < rule.count(); ++m) {
        acc += basis.eval(i, rule.nodes[m]) * basis.eval(j, rule.nodes[m]) * rule.weights[m];
      }
      EXPECT_NEAR(acc, i == j ? 1.0 : 0.0, 1e-12) << i << "," << j;
    }
  }
}

TEST(Gauss, SmallRules) {
  const auto one = gauss_rule(1);
  ASSERT_EQ(one.count(), 1u);
  EXPECT_EQ(one.nodes[0], 0.0);
  EXPECT_DOUBLE_EQ(one.weights[0], 1.0);

  const auto two = gauss_rule(2);
  EXPECT_NEAR(two.nodes[0], -1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(two.nodes[1], 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(two.weights[0], 0.5, 1e-15);
  EXPECT_NEAR(two.weights[1], 0.5, 1e-15);
  EXPECT_THROW(gauss_rule(0), DomainError);
}

TEST(Gauss, MonomialExactness) {
  for (int M : {1, 3, 7, 20, 33}) {
    const auto rule = gauss_rule(M);
    double total = 0.0;
    for (double w : rule.weights) {
      EXPECT_GT(w, 0.0);
      total += w;
    }
    EXPECT_NEAR(total, 1.0, 1e-13);
    for (std::size_t m = 0; m < rule.count(); ++m) {
      if (m > 0) {
        EXPECT_LT(rule.nodes[m - 1], rule.nodes[m]);
      }
      EXPECT_NEAR(rule.nodes[m], -rule.nodes[rule.count() - 1 - m], 1e-15);
    }
    for (int d = 0; d <= 2 * M - 1; ++d) {
      double acc = 0.0;
      for (std::size_t m = 0; m < rule.count(); ++m) acc += std::pow(rule.nodes[m], d) * rule.weights[m];
      EXPECT_NEAR(acc, monomial_moment(d), 1e-13) << "M=" << M << " d=" << d;
    }
  }
}

TEST(Gauss, CompositeRuleIntegratesKinks) {
  const auto rule = composite_gauss_rule(32, 8);
  double total = 0.0;
  double abs_moment = 0.0;
  for (std::size_t m = 0; m < rule.count(); ++m) {
    total += rule.weights[m];
    abs_moment += std::abs(rule.nodes[m]) * rule.weights[m];
  }
  EXPECT_NEAR(total, 1.0, 1e-14);
  EXPECT_NEAR(abs_moment, 0.5, 1e-14);  // kink at z = 0 sits on a panel edge
}

TEST(Galerkin, ConstantIsIdentity) {
  const OrthonormalBasis basis(3);
  const auto A = galerkin_matrix([](double) { return 1.0; }, basis, gauss_rule(8));
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(A(i, j), i == j ? 1.0 : 0.0, 1e-14);
  }
}

TEST(Galerkin, LinearCoefficientOrderOne) {
  const OrthonormalBasis basis(1);
  const auto A = galerkin_matrix([](double z) { return z; }, basis, gauss_rule(4));
  EXPECT_NEAR(A(0, 0), 0.0, 1e-15);
  EXPECT_NEAR(A(0, 1), 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(A(1, 0), 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(A(1, 1), 0.0, 1e-15);
}

TEST(Galerkin, ShiftedLinearMatchesDenseOracle) {
  const OrthonormalBasis basis(2);
  const auto A = galerkin_matrix([](double z) { return 1.0 + 0.3 * z; }, basis, gauss_rule(6));
  const auto dense = gauss_rule(64);
  for (int i = 0; i <= 2; ++i) {
    for (int j = 0; j <= 2; ++j) {
      double acc = 0.0;
      for (std::size_t m = 0; m < dense.count(); ++m) {
        const double z = dense.nodes[m];
        acc += (1.0 + 0.3 * z) * basis.eval(i, z) * basis.eval(j, z) * dense.weights[m];
      }
      const double closed = (i == j ? 1.0 : 0.0) + 0.3 * jacobi_entry(i, j);
      EXPECT_NEAR(A(i, j), acc, 1e-14);
      EXPECT_NEAR(A(i, j), closed, 1e-14);
    }
  }
}

TEST(Galerkin, JacobiMatrixOrderTen) {
  const int K = 10;
  const OrthonormalBasis basis(K);
  const auto A = galerkin_matrix([](double z) { return z; }, basis, gauss_rule(default_assembly_points(K)));
  EXPECT_LE(A.asymmetry(), 1e-12);
  for (int i = 0; i <= K; ++i) {
    for (int j = 0; j <= K; ++j) EXPECT_NEAR(A(i, j), jacobi_entry(i, j), 1e-12);
  }
}

TEST(Galerkin, RuleTooSmall) {
  const OrthonormalBasis basis(4);
  EXPECT_THROW(galerkin_matrix([](double z) { return z; }, basis, gauss_rule(4)), UsageError);
}

TEST(Project, Examples) {
  const OrthonormalBasis basis(3);
  const auto rule = gauss_rule(4);
  std::vector<double> samples(rule.count());

  for (auto& s : samples) s = 3.0;
  auto c = project(samples, basis, rule);
  EXPECT_NEAR(c[0], 3.0, 1e-14);
  for (int k = 1; k <= 3; ++k) EXPECT_NEAR(c[k], 0.0, 1e-14);

  for (std::size_t m = 0; m < rule.count(); ++m) samples[m] = rule.nodes[m];
  c = project(samples, basis, rule);
  EXPECT_NEAR(c[1], 1.0 / std::sqrt(3.0), 1e-15);
  const auto mom = moments(c);
  EXPECT_NEAR(mom.expectation, 0.0, 1e-15);
  EXPECT_NEAR(mom.variance, 1.0 / 3.0, 1e-14);

  for (std::size_t m = 0; m < rule.count(); ++m) samples[m] = basis.eval(2, rule.nodes[m]);
  c = project(samples, basis, rule);
  for (int k = 0; k <= 3; ++k) EXPECT_NEAR(c[k], k == 2 ? 1.0 : 0.0, 1e-14);

  samples.pop_back();
  EXPECT_THROW(project(samples, basis, rule), UsageError);
}

TEST(Evaluate, ExamplesAndDomain) {
  const std::vector<double> three{3.0, 0.0, 0.0};
  EXPECT_DOUBLE_EQ(evaluate(three, 0.2), 3.0);
  const std::vector<double> p1{0.0, 1.0, 0.0};
  EXPECT_NEAR(evaluate(p1, 0.5), std::sqrt(3.0) * 0.5, 1e-15);
  EXPECT_THROW(evaluate(p1, -1.01), DomainError);
}

TEST(Evaluate, ProjectionRoundTripAndParseval) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const int K = 9;
  const OrthonormalBasis basis(K);
  const auto rule = gauss_rule(K + 1);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> c(K + 1);
    for (auto& x : c) x = coef(rng);
    std::vector<double> samples(rule.count());
    double energy = 0.0;
    for (std::size_t m = 0; m < rule.count(); ++m) {
      samples[m] = evaluate(c, rule.nodes[m]);
      energy += samples[m] * samples[m] * rule.weights[m];
    }
    const auto back = project(samples, basis, rule);
    double parseval = 0.0;
    for (int k = 0; k <= K; ++k) {
      EXPECT_NEAR(back[k], c[k], 1e-12);
      parseval += c[k] * c[k];
    }
    EXPECT_NEAR(energy, parseval, 1e-10);
  }
}

TEST(Moments, Examples) {
  const std::vector<double> a{2.0, 0.0, 0.0};
  EXPECT_EQ(moments(a).expectation, 2.0);
  EXPECT_EQ(moments(a).variance, 0.0);
  const std::vector<double> b{0.0, 1.0, 0.0};
  EXPECT_EQ(moments(b).variance, 1.0);
}

TEST(NodalTable, MatchesEvaluateAndProject) {
  const OrthonormalBasis basis(5);
  const auto rule = gauss_rule(8);
  const NodalTable table(basis, rule);
  const std::vector<double> c{0.3, -0.2, 0.5, 0.1, 0.0, -0.7};
  std::vector<double> back(6, 0.0);
  for (std::size_t m = 0; m < rule.count(); ++m) {
    const double v = table.value_at(c, m);
    EXPECT_NEAR(v, evaluate(c, rule.nodes[m]), 1e-14);
    table.accumulate(v, m, back);
  }
  for (int k = 0; k < 6; ++k) EXPECT_NEAR(back[k], c[k], 1e-13);
}
