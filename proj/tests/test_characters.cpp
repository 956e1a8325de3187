#include <gtest/gtest.h>

#include <complex>
#include <random>

#include "lsieve/arith.hpp"
#include "lsieve/characters.hpp"
#include "oracles.hpp"

using namespace lsieve;
using cd = std::complex<double>;

namespace {

DirichletCharacter chi4() { return real_primitive_characters(4).front(); }

u64 primitive_count_formula(u64 q) {
  i64 s = 0;
  for (u64 d : divisors(factorize(q))) s += mobius(q / d) * static_cast<i64>(euler_phi(d));
  return static_cast<u64>(s);
}

}  // namespace

TEST(Group, Examples) {
  const auto g1 = character_group(1);
  ASSERT_EQ(g1.size(), 1u);
  for (i64 n = -3; n <= 3; ++n) EXPECT_EQ(g1[0](n), cd(1.0, 0.0));
  EXPECT_EQ(character_group(5).size(), 4u);
  EXPECT_EQ(character_group(8).size(), 4u);
  EXPECT_TRUE(character_group(8).front().is_principal());
}

TEST(Group, ComponentOrdersMultiplyToPhi) {
  for (u64 q = 1; q <= 300; ++q) {
    const auto g = CharacterGroup::of(q);
    u64 prod = 1;
    for (const auto& c : g->components()) {
      prod *= c.order;
      // Generator order within its prime power.
      u64 x = c.generator % c.prime_power, k = 1;
      while (x != 1 % c.prime_power) {
        x = x * c.generator % c.prime_power;
        ++k;
      }
      EXPECT_EQ(k, c.order) << "q=" << q;
    }
    EXPECT_EQ(prod, euler_phi(q)) << q;
  }
}

TEST(Value, Examples) {
  EXPECT_EQ(principal_character(6)(5), cd(1.0, 0.0));
  EXPECT_EQ(chi4()(3), cd(-1.0, 0.0));
  for (u64 q : {3u, 8u, 12u, 35u}) {
    for (const auto& chi : character_group(q)) EXPECT_EQ(chi(static_cast<i64>(q)), cd(0.0, 0.0));
  }
}

TEST(Value, ZeroExactlyOffUnitsAndOneAtOne) {
  for (u64 q = 1; q <= 60; ++q) {
    for (const auto& chi : character_group(q)) {
      EXPECT_EQ(chi(1), cd(1.0, 0.0));
      for (u64 n = 0; n < q; ++n) EXPECT_EQ(chi.exact(static_cast<i64>(n)).has_value(), std::gcd(n, q) == 1);
    }
  }
}

TEST(Value, CompletelyMultiplicative) {
  std::mt19937_64 rng(11);
  for (u64 q = 1; q <= 50; ++q) {
    std::uniform_int_distribution<i64> dist(0, 10'000);
    for (const auto& chi : character_group(q)) {
      for (int t = 0; t < 1000; ++t) {
        const i64 m = dist(rng), n = dist(rng);
        ASSERT_LT(std::abs(chi(m * n) - chi(m) * chi(n)), 1e-12);
      }
    }
  }
}

TEST(Orthogonality, RowsAndColumns) {
  for (u64 q = 1; q <= 100; ++q) {
    const auto chars = character_group(q);
    const double phi = static_cast<double>(euler_phi(q));
    std::vector<std::vector<cd>> vals;
    for (const auto& c : chars) vals.push_back(c.values());
    for (std::size_t i = 0; i < chars.size(); ++i) {
      for (std::size_t j = 0; j < chars.size(); ++j) {
        cd s{};
        for (u64 n = 0; n < q; ++n) s += vals[i][n] * std::conj(vals[j][n]);
        ASSERT_LE(std::abs(s - cd(i == j ? phi : 0.0, 0.0)), 1e-9 * phi) << "q=" << q;
      }
    }
    if (q > 50) continue;
    for (u64 n = 0; n < q; ++n) {
      if (std::gcd(n, q) != 1) continue;
      for (u64 m = 0; m < q; ++m) {
        if (std::gcd(m, q) != 1) continue;
        cd s{};
        for (const auto& v : vals) s += v[n] * std::conj(v[m]);
        ASSERT_LE(std::abs(s - cd(n == m ? phi : 0.0, 0.0)), 1e-9 * phi);
      }
    }
  }
}

TEST(Conductor, Examples) {
  EXPECT_EQ(conductor(principal_character(12)), 1u);
  EXPECT_EQ(conductor(induce(chi4(), 12)), 4u);
  for (const auto& chi : character_group(13)) {
    if (!chi.is_principal()) {
      EXPECT_EQ(conductor(chi), 13u);
    }
  }
}

TEST(Conductor, PrimitivityMatchesBruteForce) {
  for (u64 q = 1; q <= 120; ++q) {
    for (const auto& chi : character_group(q)) EXPECT_EQ(is_primitive(chi), oracle::is_primitive(chi)) << "q=" << q;
  }
}

TEST(Primitive, Examples) {
  EXPECT_TRUE(is_primitive(principal_character(1)));
  EXPECT_FALSE(is_primitive(principal_character(7)));
  EXPECT_EQ(primitive_characters(9).size(), 4u);
  EXPECT_EQ(primitive_characters(1).size(), 1u);
  EXPECT_TRUE(primitive_characters(2).empty());
  EXPECT_EQ(primitive_characters(8).size(), 2u);
}

TEST(Primitive, CountIdentity) {
  for (u64 q = 1; q <= 500; ++q) EXPECT_EQ(primitive_characters(q).size(), primitive_count_formula(q)) << q;
}

TEST(Induce, Examples) {
  const auto p6 = induce(principal_character(1), 6);
  EXPECT_TRUE(p6 == principal_character(6));
  const auto c12 = induce(chi4(), 12);
  EXPECT_EQ(c12(7), cd(-1.0, 0.0));
  EXPECT_EQ(c12(3), cd(0.0, 0.0));
  EXPECT_THROW(induce(chi4(), 6), DomainError);
}

TEST(Induce, EveryCharacterIsInducedFromItsCore) {
  for (u64 q = 1; q <= 100; ++q) {
    for (const auto& chi : character_group(q)) {
      const auto core = primitive_core(chi);
      EXPECT_TRUE(is_primitive(core));
      EXPECT_EQ(core.modulus(), conductor(chi));
      const auto back = induce(core, q);
      for (u64 n = 0; n < q; ++n) ASSERT_LT(std::abs(back(static_cast<i64>(n)) - chi(static_cast<i64>(n))), 1e-12);
    }
  }
}

TEST(Real, Examples) {
  const auto r4 = real_primitive_characters(4);
  ASSERT_EQ(r4.size(), 1u);
  EXPECT_EQ(r4[0](3), cd(-1.0, 0.0));
  const auto r5 = real_primitive_characters(5);
  ASSERT_EQ(r5.size(), 1u);
  // Legendre symbol mod 5: squares are 1 and 4.
  EXPECT_EQ(r5[0](4), cd(1.0, 0.0));
  EXPECT_EQ(r5[0](2), cd(-1.0, 0.0));
  EXPECT_TRUE(real_primitive_characters(6).empty());
  EXPECT_EQ(real_primitive_characters(8).size(), 2u);
}

TEST(Group, MemoizedGroupsAreShared) { EXPECT_EQ(CharacterGroup::of(77).get(), CharacterGroup::of(77).get()); }
