#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "lsieve/lsi.hpp"
#include "oracles.hpp"

using namespace lsieve;

namespace {

CoefficientSequence ones(u64 M, u64 N) {
  return CoefficientSequence::generate(M, N, [](u64) { return cplx{1.0}; });
}

CoefficientSequence prime_indicator(u64 M, u64 N) {
  const auto table = sieve_primes(M + N);
  return CoefficientSequence::generate(M, N, [&](u64 n) { return table.contains(n) ? cplx{1.0} : cplx{}; });
}

CoefficientSequence lambda_k_sequence(u64 N, unsigned k) {
  const auto lam = von_mangoldt_k_table(N, k);
  const double scale = std::pow(std::log(double(N)), k);
  return CoefficientSequence::generate(0, N, [&](u64 n) { return cplx{lam[n] / (std::sqrt(double(n)) * scale)}; });
}

double q_over_phi(u64 q) { return double(q) / double(euler_phi(q)); }

}  // namespace

TEST(Sequence, BasicsAndGuards) {
  EXPECT_THROW(CoefficientSequence(0, {}), DomainError);
  auto a = CoefficientSequence::zeros(10, 5);
  EXPECT_EQ(a.first(), 11u);
  EXPECT_EQ(a.last(), 15u);
  a.set(12, {3.0, 4.0});
  EXPECT_DOUBLE_EQ(a.norm2(), 25.0);
  EXPECT_EQ(a.at(9), cplx{});
  EXPECT_THROW(a.set(10, 1.0), DomainError);
}

TEST(Sequence, RandomIsKeyedBySeedAndTrial) {
  const auto a = random_sequence(0, 50, 7, 3), b = random_sequence(0, 50, 7, 3), c = random_sequence(0, 50, 7, 4);
  EXPECT_EQ(a.values(), b.values());
  EXPECT_NE(a.values(), c.values());
  const auto odd = random_sequence(0, 50, 7, 3, SupportRestriction::prime_free({2}));
  for (u64 n = 2; n <= 50; n += 2) EXPECT_EQ(odd.at(n), cplx{});
  EXPECT_EQ(odd.at(3), a.at(3));
}

TEST(Support, RestrictionsAndViolations) {
  EXPECT_TRUE(SupportRestriction::rough(10).admits(121));
  EXPECT_FALSE(SupportRestriction::rough(10).admits(77));
  EXPECT_FALSE(SupportRestriction::coprime_to({6, 10}).admits(25));
  EXPECT_TRUE(SupportRestriction::coprime_to({6, 10}).admits(49));
  EXPECT_THROW(SupportRestriction::prime_free({4}), DomainError);
  auto a = CoefficientSequence::zeros(0, 20);
  a.set(14, 1.0);
  try {
    require_support(a, SupportRestriction::prime_free({2}), "test");
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("a_14"), std::string::npos);
  }
}

TEST(CharSum, Examples) {
  EXPECT_EQ(char_sum(principal_character(1), ones(0, 5)), cplx(5.0));
  const auto chi4 = real_primitive_characters(4).front();
  EXPECT_EQ(char_sum(chi4, CoefficientSequence::zeros(0, 9)), cplx{});
  EXPECT_LT(std::abs(char_sum(chi4, ones(0, 4))), 1e-15);
}

TEST(CharSum, FoldMatchesDirectEvaluation) {
  const auto a = random_sequence(37, 120, 1, 0);
  for (u64 q : {1u, 7u, 12u, 25u}) {
    for (const auto& chi : character_group(q)) {
      EXPECT_LT(std::abs(char_sum(chi, a) - oracle::char_sum(chi, 37, a.values())), 1e-10);
    }
  }
}

TEST(Mvs, Examples) {
  const auto r = lsi_mvs(ones(0, 5), 2);
  EXPECT_NEAR(r.lhs, 25.0, 1e-12);
  EXPECT_DOUBLE_EQ(r.rhs, 45.0);
  EXPECT_TRUE(r.pass);
  const auto z = lsi_mvs(CoefficientSequence::zeros(0, 30), 5);
  EXPECT_EQ(z.lhs, 0.0);
  EXPECT_EQ(z.rhs, 0.0);
  EXPECT_EQ(z.ratio, 0.0);
  EXPECT_TRUE(z.pass);
  for (u64 t = 0; t < 100; ++t) EXPECT_TRUE(lsi_mvs(random_sequence(0, 200, 3, t), 10).pass);
}

TEST(Mvs, LhsMatchesBruteForce) {
  const auto a = random_sequence(100, 60, 5, 0);
  const double brute = oracle::primitive_lhs(12, 100, a.values(), q_over_phi);
  EXPECT_NEAR(lsi_mvs(a, 12).lhs, brute, 1e-9 * brute);
}

TEST(Bd, Examples) {
  const auto r = lsi_bd(ones(0, 5), 2);
  EXPECT_NEAR(r.rhs, std::pow(std::sqrt(5.0) + 2.0, 2) * 5.0, 1e-12);
  EXPECT_NEAR(r.rhs, 89.72, 0.01);
  EXPECT_TRUE(r.pass);
  auto single = CoefficientSequence::zeros(4, 1);
  single.set(5, {0.6, 0.8});
  const auto s = lsi_bd(single, 1);
  EXPECT_NEAR(s.lhs, 1.0, 1e-15);
  EXPECT_NEAR(s.rhs, 4.0, 1e-15);
  for (u64 t = 0; t < 20; ++t) EXPECT_TRUE(lsi_bd(random_sequence(0, 100, 9, t), 30).pass);
}

TEST(Thm12, Examples) {
  const auto odd = SupportRestriction::prime_free({2});
  const auto a = random_sequence(0, 50, 4, 0, odd);
  cplx total{};
  for (const auto& v : a.values()) total += v;
  EXPECT_NEAR(lsi_thm12(a, {1}, {2}).lhs, std::norm(total), 1e-9);
  for (u64 t = 0; t < 20; ++t) EXPECT_TRUE(lsi_thm12(random_sequence(0, 50, 4, t, odd), {1, 3, 5}, {2}).pass);
  EXPECT_EQ(lsi_thm12(CoefficientSequence::zeros(0, 50), {1, 3, 5}, {2}).lhs, 0.0);
  EXPECT_THROW(lsi_thm12(a, {1, 4}, {2}), DomainError);
  EXPECT_THROW(lsi_thm12(ones(0, 10), {1, 3}, {2}), PreconditionError);
}

TEST(Thm12, LhsMatchesBruteForce) {
  const auto a = random_sequence(0, 40, 8, 0, SupportRestriction::prime_free({2, 3}));
  const std::vector<u64> moduli{1, 5, 7, 25, 35};
  double brute = 0.0;
  for (u64 q : moduli) {
    for (const auto& chi : character_group(q)) {
      brute += std::norm(oracle::gauss_sum(chi)) / double(euler_phi(q)) * std::norm(oracle::char_sum(chi, 0, a.values()));
    }
  }
  EXPECT_NEAR(lsi_thm12(a, moduli, {2, 3}).lhs, brute, 1e-9 * brute);
}

TEST(Eq14, Examples) {
  const auto a = random_sequence(0, 80, 2, 0);
  cplx total{};
  for (const auto& v : a.values()) total += v;
  const auto r1 = lsi_eq14(a, 1);
  EXPECT_NEAR(r1.lhs, std::norm(total), 1e-9);
  EXPECT_NEAR(r1.rhs, std::pow(std::sqrt(80.0) + 1.0, 2) * a.norm2(), 1e-9);
  const auto p = prime_indicator(25, 975);
  EXPECT_TRUE(lsi_eq14(p, 5).pass);
  EXPECT_EQ(lsi_eq14(CoefficientSequence::zeros(0, 10), 5).lhs, 0.0);
  EXPECT_THROW(lsi_eq14(ones(0, 10), 5), PreconditionError);
}

TEST(Eq14, WeightMatchesDirectSum) {
  // q=3, Q=20: r in {1,2,4,5}, squarefree and coprime to 3 -> 1 + 1 + 1/4.
  EXPECT_NEAR(eq14_weight(3, 20), 1.5 * (1.0 + 1.0 + 0.25), 1e-12);
}

TEST(Eq15, Examples) {
  const auto r = check_eq15(1, 1.0);
  EXPECT_DOUBLE_EQ(r.lhs, 1.0);
  EXPECT_DOUBLE_EQ(r.rhs, 0.0);
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(check_eq15(6, 100).pass);
  EXPECT_TRUE(check_eq15(2, 1e4).pass);
  EXPECT_EQ(r.bound, Bound::lower);
}

TEST(Eq16, Examples) {
  const auto a = random_sequence(0, 50, 1, 0);
  const auto r1 = lsi_eq16(a, 1);
  EXPECT_EQ(r1.lhs, 0.0);
  EXPECT_TRUE(r1.pass);
  EXPECT_TRUE(lsi_eq16(prime_indicator(20, 9980), 20).pass);
  for (u64 t = 0; t < 10; ++t) EXPECT_TRUE(lsi_eq16(random_sequence(0, 1000, 6, t, SupportRestriction::rough(10)), 10).pass);
}

TEST(Thm13, Examples) {
  const auto a = random_sequence(0, 30, 2, 0);
  cplx total{};
  for (const auto& v : a.values()) total += v;
  const auto r1 = lsi_thm13(a, 1);
  EXPECT_NEAR(r1.lhs, std::norm(total), 1e-9);
  EXPECT_NEAR(r1.rhs, 31.0 * a.norm2(), 1e-9);
  for (u64 t = 0; t < 5; ++t) EXPECT_TRUE(lsi_thm13(random_sequence(0, 300, 12, t), 15).pass);
}

TEST(Thm13, LhsMatchesBruteForce) {
  for (const auto& [a, Q] : {std::pair{ones(0, 12), u64{4}}, std::pair{random_sequence(17, 40, 3, 0), u64{9}}}) {
    double brute = 0.0;
    for (u64 q = 1; q <= Q; ++q) {
      for (u64 r = 1; q * r <= Q; ++r) {
        if (std::gcd(q, r) != 1) continue;
        for (const auto& chi : character_group(q)) {
          if (!oracle::is_primitive(chi)) continue;
          cplx s{};
          for (u64 n = a.first(); n <= a.last(); ++n) {
            s += a.at(n) * oracle::ramanujan(r, static_cast<long long>(n)).real() * chi(static_cast<i64>(n));
          }
          brute += double(q) / double(euler_phi(q * r)) * std::norm(s);
        }
      }
    }
    const auto rep = lsi_thm13(a, Q);
    EXPECT_NEAR(rep.lhs, brute, 1e-9 * brute);
    EXPECT_TRUE(rep.pass);
  }
}

TEST(ScriptL, Examples) {
  const std::vector<u64> one{1};
  EXPECT_DOUBLE_EQ(script_L_q(1, one), 1.0);
  std::vector<u64> all;
  for (u64 r = 1; r <= 500; ++r) all.push_back(r);
  EXPECT_GE(script_L_q(2, all), 0.5 * std::log(500.0));
  EXPECT_GE(script_L_q(1, all), std::log(500.0));
  EXPECT_DOUBLE_EQ(script_L(1, all).value, script_L_q(1, all));
  for (u64 Q : {1u, 5u, 30u}) EXPECT_GE(script_L(Q, all).value, std::log(500.0));
  const std::vector<u64> small{2, 3, 5, 7};
  const auto L = script_L(10, small);
  double best = INFINITY;
  for (u64 q = 1; q <= 10; ++q) best = std::min(best, script_L_q(q, small));
  EXPECT_DOUBLE_EQ(L.value, best);
  EXPECT_DOUBLE_EQ(script_L_q(L.argmin, small), best);
}

TEST(Prop21, Examples) {
  const auto a = random_sequence(0, 200, 5, 0);
  const auto r = lsi_prop21(a, 6, {1}, 1);
  double min_ratio = INFINITY;
  for (u64 q = 1; q <= 6; ++q) min_ratio = std::min(min_ratio, q_over_phi(q));
  EXPECT_DOUBLE_EQ(r.parameters.at("L"), min_ratio);
  EXPECT_TRUE(r.pass);
  const u64 R = 20;
  std::vector<u64> all;
  for (u64 k = 1; k <= R; ++k) all.push_back(k);
  const auto p = lsi_prop21(prime_indicator(R, 2000), 5, all, R);
  EXPECT_TRUE(p.pass);
  EXPECT_GE(p.parameters.at("L"), std::log(double(R)));
  EXPECT_TRUE(lsi_prop21(CoefficientSequence::zeros(0, 10), 3, all, R).pass);
  EXPECT_THROW(lsi_prop21(ones(0, 10), 3, {2}, 2), PreconditionError);
}

TEST(Prop22, Examples) {
  EXPECT_TRUE(lsi_prop22(CoefficientSequence::zeros(0, 10'000), 3).pass);
  EXPECT_EQ(lsi_prop22(CoefficientSequence::zeros(0, 10'000), 3).lhs, 0.0);
  const auto a = CoefficientSequence::generate(0, 100'000, [](u64 n) { return r2_coprime(n) > 0 ? cplx{1.0} : cplx{}; });
  const auto r = lsi_prop22(a, 3);
  EXPECT_TRUE(r.pass);
  EXPECT_GT(r.parameters.at("R_size"), 1.0);
  EXPECT_THROW(lsi_prop22(a, 400), DomainError);
}

TEST(Prop22, PrincipalTermBoundsFullLhs) {
  const auto a = random_sequence(0, 5000, 1, 0);
  const auto weighted = CoefficientSequence::generate(0, 5000, [&](u64 n) { return a.at(n) * double(r2_coprime(n)); });
  cplx total{};
  for (const auto& v : weighted.values()) total += v;
  EXPECT_LE(std::norm(total), lsi_prop22(a, 4).lhs * (1 + 1e-12));
}

TEST(Thm21, Conditions) {
  EXPECT_TRUE(thm21_conditions(CoefficientSequence::zeros(0, 100)).ok);
  auto two = CoefficientSequence::zeros(0, 100);
  two.set(2, 1.0);
  const auto c2 = thm21_conditions(two);
  EXPECT_FALSE(c2.ok);
  ASSERT_TRUE(c2.witness.has_value());
  EXPECT_EQ(*c2.witness, 2u);
}

TEST(Thm21, VonMangoldtSequenceBreaksThePrimeTwoCondition) {
  // Multiples of 2 carry (log 2 / log N)^2 (1 - 2^-K) mass, twice the allowed (1/2)(log 2 / log N)^2.
  const auto a = lambda_k_sequence(10'000, 1);
  const auto c = thm21_conditions(a);
  EXPECT_TRUE(c.norm_ok);
  EXPECT_FALSE(c.ok);
  ASSERT_TRUE(c.witness.has_value());
  EXPECT_EQ(*c.witness, 2u);
  EXPECT_NEAR(c.witness_ratio, 2.0 * (1.0 - std::pow(2.0, -13)), 1e-9);
  EXPECT_TRUE(thm21_conditions(scale_to_thm21_conditions(a)).ok);
}

TEST(Thm21, HigherVonMangoldtSatisfyConditionsUpToAConstant) {
  for (unsigned k = 1; k <= 3; ++k) {
    const auto c = thm21_conditions(lambda_k_sequence(10'000, k));
    EXPECT_TRUE(std::isfinite(c.fitted_constant())) << k;
    EXPECT_GT(c.fitted_constant(), 0.0) << k;
    EXPECT_LT(c.fitted_constant(), 10.0) << k;
  }
}

TEST(Thm21, Evaluation) {
  EXPECT_TRUE(lsi_thm21(CoefficientSequence::zeros(0, 1000), 5).pass);
  EXPECT_THROW(lsi_thm21(CoefficientSequence::zeros(0, 100), 10), DomainError);
  const auto a = lambda_k_sequence(100'000, 1);
  EXPECT_THROW(lsi_thm21(a, 20), DomainError);
  const auto r = lsi_thm21(scale_to_thm21_conditions(a), 20);
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.parameters.at("empirical_constant"), 24.0);
}

TEST(BrunTitchmarsh, Examples) {
  EXPECT_TRUE(brun_titchmarsh(1000, 10'000).pass);
  EXPECT_TRUE(brun_titchmarsh(11, 100).pass);
  EXPECT_THROW(brun_titchmarsh(5, 100), DomainError);
  const auto r = brun_titchmarsh(1000, 10'000);
  EXPECT_DOUBLE_EQ(r.lhs, double(sieve_primes(11'000).count_upto(11'000) - sieve_primes(11'000).count_upto(1000)));
}

TEST(BrunTitchmarsh, BoundRatioDecreases) {
  double previous = INFINITY;
  for (u64 N : {10'000u, 100'000u, 1'000'000u}) {
    const auto r = brun_titchmarsh(N, N, false);
    EXPECT_TRUE(r.pass);
    EXPECT_LT(r.parameters.at("bound_ratio"), previous);
    EXPECT_GT(r.parameters.at("bound_ratio"), 1.0);
    previous = r.parameters.at("bound_ratio");
  }
}

TEST(Properties, LhsMonotoneInQ) {
  const auto a = random_sequence(50, 150, 21, 0);
  const auto rough = random_sequence(0, 300, 21, 1, SupportRestriction::rough(12));
  for (u64 Q = 1; Q < 12; ++Q) {
    EXPECT_LE(lsi_mvs(a, Q).lhs, lsi_mvs(a, Q + 1).lhs);
    EXPECT_LE(lsi_thm13(a, Q).lhs, lsi_thm13(a, Q + 1).lhs * (1 + 1e-12));
    EXPECT_LE(lsi_eq14(rough, Q).lhs, lsi_eq14(rough, Q + 1).lhs * (1 + 1e-12));
  }
}

TEST(Properties, ScalingCovariance) {
  const auto a = random_sequence(0, 120, 2, 0);
  const auto base = lsi_bd(a, 8);
  for (cplx c : {cplx{2.0}, cplx{0.0, 1.0}, cplx{-3.0}}) {
    const auto r = lsi_bd(a.scaled(c), 8);
    EXPECT_NEAR(r.lhs, std::norm(c) * base.lhs, 1e-9 * r.lhs);
    EXPECT_NEAR(r.rhs, std::norm(c) * base.rhs, 1e-9 * r.rhs);
    EXPECT_NEAR(r.ratio, base.ratio, 1e-12);
    EXPECT_EQ(r.pass, base.pass);
  }
}

TEST(Properties, BdRhsWithinTwiceMvsRhs) {
  for (u64 N = 1; N <= 400; N += 13) {
    for (u64 Q = 1; double(Q) <= std::sqrt(double(N)); ++Q) {
      const double s = std::sqrt(double(N)) + double(Q);
      EXPECT_LE(s * s, 2.0 * (double(N) + double(Q * Q)));
    }
  }
}

TEST(Properties, SinglePointClosedForm) {
  const u64 n0 = 10'007, Q = 20;  // prime above every q <= Q
  auto a = CoefficientSequence::zeros(n0 - 1, 1);
  a.set(n0, {1.5, -0.5});
  double expected = 0.0;
  for (u64 q = 1; q <= Q; ++q) expected += q_over_phi(q) * double(primitive_characters(q).size());
  EXPECT_NEAR(lsi_mvs(a, Q).lhs, expected * a.norm2(), 1e-9 * expected);
}

TEST(Properties, LogWeightsBelowInducedWeights) {
  for (u64 t = 0; t < 10; ++t) {
    const auto a = random_sequence(0, 400, 17, t, SupportRestriction::rough(15));
    EXPECT_LE(lsi_eq16(a, 15).lhs, lsi_eq14(a, 15).lhs);
  }
}

TEST(Properties, SabotagedRhsFails) {
  const auto flat = CoefficientSequence::generate(0, 1000, [](u64) { return cplx{1.0}; });
  const auto r = lsi_mvs(flat, 5);
  EXPECT_TRUE(r.pass);
  EXPECT_FALSE(r.with_rhs_scaled(0.5).pass);
}

TEST(Properties, Deterministic) {
  const auto a = random_sequence(0, 500, 99, 0);
  EXPECT_EQ(lsi_thm13(a, 12).lhs, lsi_thm13(a, 12).lhs);
  EXPECT_EQ(lsi_mvs(a, 20).lhs, lsi_mvs(random_sequence(0, 500, 99, 0), 20).lhs);
}

TEST(Report, RatioConventions) {
  const auto z = InequalityReport::make(Inequality::mvs, 0.0, 0.0);
  EXPECT_EQ(z.ratio, 0.0);
  EXPECT_TRUE(z.pass);
  const auto inf = InequalityReport::make(Inequality::mvs, 1.0, 0.0);
  EXPECT_TRUE(std::isinf(inf.ratio));
  EXPECT_FALSE(inf.pass);
  EXPECT_TRUE(InequalityReport::make(Inequality::mvs, 1.0 + 5e-10, 1.0).pass);
  EXPECT_FALSE(InequalityReport::make(Inequality::mvs, 1.0 + 2e-9, 1.0).pass);
}
