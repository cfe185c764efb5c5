#include <gtest/gtest.h>

#include <cmath>

#include "qinv/jones.hpp"

using namespace qinv;

namespace {

std::vector<i64> primes_in(i64 lo, i64 hi) {
  std::vector<i64> v;
  for (i64 k = lo; k <= hi; ++k)
    if (k > 2 && is_prime(k)) v.push_back(k);
  return v;
}

}  // namespace

TEST(Unknot, Examples) {
  const PrimeK K(5);
  EXPECT_EQ(jones_unknot(1, K), CycInt::one(K));
  EXPECT_EQ(jones_unknot(-1, K), -CycInt::one(K));
  EXPECT_NEAR(std::abs(eval_complex(jones_unknot(3, K)) - 1.6180339887498949), 0, 1e-12);
  try {
    jones_unknot(2, K);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::even_color);
  }
}

TEST(Unknot, EmbedsToTrig) {
  for (i64 k : primes_in(3, 31)) {
    const PrimeK K(k);
    for (i64 a = -k + 2; a < k; a += 2) {
      const auto v = eval_complex(jones_unknot(a, K));
      EXPECT_NEAR(std::abs(v - jones_unknot_numeric(a, k)), 0, 1e-12) << k << " " << a;
    }
  }
}

TEST(Unknot, OddAndPeriodic) {
  for (i64 k : {5, 7, 11}) {
    const PrimeK K(k);
    for (i64 a = -3 * k; a <= 3 * k; a += 2) {
      const i64 b = a % 2 ? a : a + 1;
      EXPECT_EQ(jones_unknot(-b, K), -jones_unknot(b, K));
      EXPECT_EQ(jones_unknot(b + 2 * k, K), jones_unknot(b, K));
    }
  }
}

TEST(SeifertLink, Reductions) {
  for (i64 k : {5, 7, 11, 13}) {
    const PrimeK K(k);
    for (i64 b = -k + 2; b < k; b += 2) {
      for (i64 a = -k + 2; a < k; a += 2) EXPECT_EQ(jones_seifert(b, {a}, K), jones_unknot(b * a, K));
      EXPECT_EQ(jones_seifert(b, {1, 1, 1}, K), jones_unknot(b, K));
      EXPECT_NEAR(jones_seifert_numeric(b, {1, 1, 1}, k), jones_unknot_numeric(b, k), 1e-12);
    }
    for (i64 a1 = 1; a1 < k; a1 += 2)
      for (i64 a2 = 1; a2 < k; a2 += 2) {
        EXPECT_EQ(jones_seifert(1, {a1, a2}, K), jones_unknot(a1, K) * jones_unknot(a2, K));
        EXPECT_NEAR(std::abs(eval_complex(jones_seifert(3, {a1, a2, 5}, K)) - jones_seifert_numeric(3, {a1, a2, 5}, k)), 0, 1e-10);
      }
  }
}

TEST(SeifertLink, Oddness) {
  const PrimeK K(7);
  for (i64 b = -5; b <= 5; b += 2)
    for (i64 a = -5; a <= 5; a += 2) {
      EXPECT_EQ(jones_seifert(b, {-a, 3}, K), -jones_seifert(b, {a, 3}, K));
      EXPECT_EQ(jones_seifert(-b, {a, 3}, K), -jones_seifert(b, {a, 3}, K) * mpz_class(1));
    }
}

TEST(Tables, UnlinkIsMultiplicative) {
  const PrimeK K(11);
  const JonesTable u2 = builtin_jones("unlink2"), u1 = builtin_jones("unknot"), e = builtin_jones("empty");
  EXPECT_EQ(e.exact({}, K), CycInt::one(K));
  for (i64 a = -9; a <= 9; a += 2)
    for (i64 b = -9; b <= 9; b += 2) EXPECT_EQ(u2.exact({a, b}, K), u1.exact({a}, K) * u1.exact({b}, K));
  EXPECT_THROW(builtin_jones("trefoil"), error);
}

TEST(Tables, Tabulated) {
  const PrimeK K(5);
  std::map<std::vector<i64>, std::vector<mpz_class>> vals;
  for (i64 a : {1, 3}) vals[{a}] = jones_unknot(a, K).coeffs();
  const JonesTable t = tabulated_jones("unknot-tab", 1, 5, vals);
  for (i64 a = -13; a <= 13; a += 2) EXPECT_EQ(t.exact({a}, K), jones_unknot(a, K)) << a;
  EXPECT_THROW(t.exact({2}, K), error);
  EXPECT_THROW(t.exact({1}, PrimeK(7)), error);
}

TEST(Expansion, Unknot) {
  const auto r = expansion_check(builtin_jones("unknot"), 8);
  EXPECT_TRUE(r.ok);
  EXPECT_TRUE(r.violations.empty());
  // odd n carry nothing; n = 2 has the alpha^2 term
  EXPECT_EQ(r.max_m[1], -1);
  EXPECT_EQ(r.max_m[2], 1);
}

TEST(Expansion, SeifertJBeta) {
  for (auto a : {std::vector<i64>{1, 2, 3}, std::vector<i64>{3, 5, 2}, std::vector<i64>{4, 4, 6}}) {
    const auto r = expansion_check(seifert_jbeta_table(a), 6);
    EXPECT_TRUE(r.ok) << r.id;
  }
}

TEST(Expansion, EmptyAndUnlink) {
  const auto e = expansion_check(builtin_jones("empty"), 8);
  EXPECT_TRUE(e.ok);
  for (std::size_t n = 1; n <= 8; ++n) EXPECT_EQ(e.max_m[n], -1);
  EXPECT_TRUE(expansion_check(builtin_jones("unlink3"), 8).ok);
}

TEST(Expansion, FlagsAViolation) {
  // sinh(a^2 h)/(a^2 sinh h): quartic color dependence at n = 2 breaks m <= 3n/4
  JonesTable t = builtin_jones("unknot");
  t.trig->factors[0].vars = {0, 0};
  const auto r = expansion_check(t, 4);
  EXPECT_FALSE(r.ok);
}

TEST(SeifertJBeta, ExactMatchesNumeric) {
  const JonesTable t = seifert_jbeta_table({2, 3, 5});
  for (i64 k : {7, 11, 13}) {
    const PrimeK K(k);
    for (i64 b = -k + 2; b < k; b += 2) {
      const double h = M_PI / double(k);
      double want = std::sin(2 * b * h) * std::sin(3 * b * h) * std::sin(5 * b * h) / (std::sin(h) * std::pow(std::sin(b * h), 2));
      // with z = q^{2^*} each z-ratio differs from the sine ratio by a sign; in total (-1)^{sum a_j - N}
      want = -want;
      EXPECT_NEAR(std::abs(eval_complex(t.exact({b}, K)) - want), 0, 1e-9) << k << " " << b;
    }
  }
}
