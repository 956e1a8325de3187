#include <gtest/gtest.h>

#include <complex>

#include "lsieve/expsums.hpp"
#include "oracles.hpp"

using namespace lsieve;
using cd = std::complex<double>;

TEST(Gauss, Examples) {
  EXPECT_LT(std::abs(gauss_sum(principal_character(1)) - cd(1.0, 0.0)), 1e-15);
  const auto chi4 = real_primitive_characters(4).front();
  EXPECT_LT(std::abs(gauss_sum(chi4) - cd(0.0, 2.0)), 1e-12);
  for (const auto& chi : primitive_characters(7)) EXPECT_NEAR(std::norm(gauss_sum(chi)), 7.0, 1e-9);
}

TEST(Gauss, MatchesDirectSummation) {
  for (u64 q : {5u, 9u, 12u, 16u, 21u}) {
    for (const auto& chi : character_group(q)) EXPECT_LT(std::abs(gauss_sum(chi) - oracle::gauss_sum(chi)), 1e-9);
  }
}

TEST(Gauss, TermCountBoundsValue) {
  for (const auto& chi : character_group(24)) {
    const auto t = gauss_sum_terms(chi);
    EXPECT_EQ(t.term_count, 8u);
    EXPECT_LE(std::abs(t.value), static_cast<double>(t.term_count) + 1e-12);
  }
}

TEST(Gauss, PrincipalGivesMobius) {
  for (u64 q = 1; q <= 200; ++q) EXPECT_LT(std::abs(gauss_sum(principal_character(q)) - cd(mobius(q), 0.0)), 1e-9) << q;
}

TEST(Ramanujan, Examples) {
  EXPECT_LT(std::abs(ramanujan_sum_exp(1, 17) - cd(1.0, 0.0)), 1e-15);
  EXPECT_LT(std::abs(ramanujan_sum_exp(4, 2) - cd(-2.0, 0.0)), 1e-12);
  EXPECT_LT(std::abs(ramanujan_sum_exp(3, 4) - cd(-1.0, 0.0)), 1e-12);
  EXPECT_EQ(ramanujan_sum_divisor(u64{12}, 0), 4);
  EXPECT_EQ(ramanujan_sum_divisor(u64{4}, 2), -2);
  EXPECT_EQ(ramanujan_sum_divisor(u64{6}, 6), 2);
  EXPECT_THROW(ramanujan_sum_exp(0, 1), DomainError);
}

TEST(Ramanujan, ExpMatchesOracle) {
  for (u64 r = 1; r <= 40; ++r) {
    for (i64 n = -5; n <= 40; ++n) EXPECT_LT(std::abs(ramanujan_sum_exp(r, n) - oracle::ramanujan(r, n)), 1e-9);
  }
}

TEST(Ramanujan, MultiplicativeInModulus) {
  for (u64 r = 1; r <= 100; ++r) {
    for (u64 s = 1; r * s <= 100; ++s) {
      if (std::gcd(r, s) != 1) continue;
      for (i64 n = 0; n <= 30; ++n) {
        EXPECT_EQ(ramanujan_sum_divisor(r * s, n), ramanujan_sum_divisor(r, n) * ramanujan_sum_divisor(s, n));
      }
    }
  }
}

TEST(Ramanujan, TableIsPeriodicEvaluation) {
  for (u64 r : {1u, 6u, 12u, 30u}) {
    const auto t = ramanujan_table(r);
    for (u64 u = 0; u < r; ++u) EXPECT_EQ(t[u], ramanujan_sum_divisor(r, static_cast<i64>(u)));
  }
}
