#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lsieve/asymptotics.hpp"
#include "oracles.hpp"

using namespace lsieve;

namespace {

double brute_S(u64 q, u64 x, bool with_tau) {
  double s = 0.0;
  for (u64 n = 1; n <= x; ++n) {
    if (std::gcd(n, q) != 1 || !oracle::nu(n)) continue;
    s += (with_tau ? double(oracle::tau(n)) : 1.0) / double(n);
  }
  return s;
}

}  // namespace

TEST(Sums, Examples) {
  EXPECT_DOUBLE_EQ(S_q(1, 1), 1.0);
  EXPECT_NEAR(S_q(3, 10), 1.0 + 2.0 / 7.0, 1e-15);
  EXPECT_NEAR(S_q(1, 10), 1.0 + 2.0 / 3.0 + 2.0 / 7.0, 1e-15);
  EXPECT_DOUBLE_EQ(T_q(1, 1), 1.0);
  EXPECT_NEAR(T_q(1, 10), 1.0 + 1.0 / 3.0 + 1.0 / 7.0, 1e-15);
  EXPECT_EQ(count_nu_tau(1), 1u);
  EXPECT_EQ(count_nu_tau(10), 5u);
  EXPECT_THROW(S_q(1, 0.5), DomainError);
  EXPECT_THROW(S_q(factorize(1), 1e6, 1000), ResourceError);
}

TEST(Sums, MatchBruteForce) {
  for (u64 q : {1u, 3u, 10u, 21u, 77u}) {
    EXPECT_NEAR(S_q(q, 3000), brute_S(q, 3000, true), 1e-12);
    EXPECT_NEAR(T_q(q, 3000), brute_S(q, 3000, false), 1e-12);
  }
}

TEST(Sums, TSquaredDominatesS) {
  for (u64 q : {1u, 3u, 7u, 21u, 105u, 3u * 7u * 11u * 19u}) {
    for (double x : {1e2, 1e4, 1e6}) EXPECT_GE(T_q(q, x) * T_q(q, x), S_q(q, x)) << q << " " << x;
  }
}

TEST(Constant, Examples) {
  EXPECT_NEAR(constant_c(3).value, 3.0 / std::numbers::pi * 5.0 / 6.0, 1e-15);
  const auto c6 = constant_c(1'000'000), c7 = constant_c(10'000'000);
  EXPECT_LE(std::abs(c6.value - c7.value), c6.tail_bound);
  EXPECT_DOUBLE_EQ(c6.tail_bound, 2e-6);
  EXPECT_GT(c7.value, 0.0);
  EXPECT_LT(c7.value, 3.0 / std::numbers::pi);
  EXPECT_THROW(constant_c(2), DomainError);
}

TEST(Constant, RefinementMovesLessThanTailBound) {
  for (u64 cut : {100u, 1000u, 10'000u, 100'000u}) {
    const auto a = constant_c(cut), b = constant_c(10 * cut);
    EXPECT_LE(std::abs(a.value - b.value), a.tail_bound);
  }
}

TEST(Constant, DensityIsTwoThirdsOfResidue) {
  EXPECT_NEAR(nu_tau_density(100'000).value / constant_c(100'000).value, 2.0 / 3.0, 1e-15);
  const double measured = double(count_nu_tau(1e6)) / 1e6;
  EXPECT_NEAR(measured, nu_tau_density(1'000'000).value, 0.01);
}

TEST(Lemma21, MainTermExamples) {
  const double c = default_c();
  EXPECT_DOUBLE_EQ(lemma21_main_term(1, 1e4), c * std::log(1e4));
  EXPECT_DOUBLE_EQ(lemma21_main_term(2, 1e4), lemma21_main_term(1, 1e4));
  EXPECT_NEAR(lemma21_main_term(21, 1e4), c / (1 + 2.0 / 3) / (1 + 2.0 / 7) * std::log(1e4), 1e-12);
}

TEST(Lemma21, ErrorExamples) {
  EXPECT_DOUBLE_EQ(lemma21_error(1, 10).structured, 1.0);
  EXPECT_NEAR(lemma21_error(21, 10).structured,
              (1 + std::log(3.0) / 3 + std::log(7.0) / 7) * (5.0 / 3) * (9.0 / 7), 1e-12);
  EXPECT_LE(lemma21_error(3, 10).structured, lemma21_error(21, 10).structured);
  EXPECT_NEAR(lemma21_error(1, 10).simplified, std::pow(std::log(std::log(3.0)), 3), 1e-15);
}

TEST(Lemma21, FittedConstantAndKappa) {
  const auto fit = lemma21_fit({1, 3, 7, 21, 105}, {1e2, 1e4, 1e6});
  EXPECT_LE(fit.C, 10.0);
  EXPECT_TRUE(fit.t_squared_dominates);
  EXPECT_GT(fit.kappa_min, 0.0);
  EXPECT_LT(fit.kappa_max / fit.kappa_min, 1.5);
}

TEST(Lemma21, ScriptLGrowth) {
  for (u64 Q : {5u, 20u}) {
    for (u64 R : {100u, 1000u}) {
      const auto g = script_L_growth(Q, R);
      EXPECT_GT(g.kappa_prime, 0.0);
      EXPECT_GE(g.L, 1.0);
    }
  }
}

TEST(ZSeries, ProductFormsAgreeAndDifferFromSeriesByTheTwoFactor) {
  const auto z = z_series_check(2.0, 100'000);
  EXPECT_TRUE(z.product_forms_agree);
  EXPECT_TRUE(z.corrected_agrees);
  EXPECT_FALSE(z.literal_agrees);
  EXPECT_NEAR(z.euler / z.direct, 1.25, z.tolerance);
  EXPECT_TRUE(z.pass);
  EXPECT_DOUBLE_EQ(1.0 - std::pow(4.0, -2.0), 15.0 / 16.0);
}

TEST(ZSeries, LargeExponentTendsToOne) {
  const auto z = z_series_check(60.0, 1000);
  EXPECT_NEAR(z.direct, 1.0, 1e-12);
  EXPECT_NEAR(z.euler_without_two, 1.0, 1e-12);
  EXPECT_NEAR(z.factored / z.two_factor, 1.0, 1e-12);
}

TEST(ZSeries, Guards) {
  EXPECT_THROW(z_series_check(1.0, 1000), DomainError);
  EXPECT_THROW(z_series_check(1.2, 1000), DomainError);
  EXPECT_THROW(z_series_check(2.0, 999), DomainError);
}

TEST(Convolution, Identity) {
  const auto one = convolution_identity_check(1, 500);
  EXPECT_EQ(one.smooth_terms, 1u);
  EXPECT_EQ(one.direct, one.convolved);
  EXPECT_TRUE(convolution_identity_check(3, 100).pass);
  EXPECT_TRUE(convolution_identity_check(21, 1e4).pass);
  EXPECT_TRUE(convolution_identity_check(3 * 7 * 11 * 5, 1e5).pass);
}
