#include <gtest/gtest.h>

#include "qinv/closedform.hpp"
#include "qinv/surgery.hpp"

using namespace qinv;

namespace {

using Fibers = std::vector<std::pair<i64, i64>>;

const std::vector<Fibers> seifert_cases = {
    {{2, 1}, {3, 1}, {5, -4}}, {{2, 1}, {3, 1}, {5, 1}}, {{2, -1}, {3, 2}, {7, 3}},
    {{-3, 2}, {5, 2}, {4, -1}}, {{2, 1}, {3, -1}, {7, 2}, {5, 3}}, {{3, 1}, {4, 1}, {5, 1}},
};

// the closed form needs every p_j, q_j and |H_1| to be a unit mod K
bool admissible(const Fibers& f, i64 k) {
  for (auto [p, q] : f)
    if (floor_mod(p, k) == 0 || floor_mod(q, k) == 0) return false;
  return floor_mod(SeifertData(f).H(), k) != 0;
}

}  // namespace

TEST(SeifertCn, Examples) {
  // (z^{-1} - z)(z^{-1} - z) / (z^{-1} - z) = z^{-1} - z
  auto t = seifert_cn({1, 1});
  ASSERT_EQ(t.C.size(), 1u);
  EXPECT_EQ(t.C.at(1), 1);
  // (z^{-2} - z^2)/(z^{-1} - z) = z^{-1} + z times (z^{-2}-z^2) ... two fibres a = (2, 3)
  t = seifert_cn({2, 3});
  EXPECT_EQ(t.C.at(4), 1);
  EXPECT_EQ(t.C.at(2), 1);
  EXPECT_EQ(t.C.count(3), 0u);
  EXPECT_THROW(seifert_cn({}), error);
  EXPECT_THROW(seifert_cn({0, 2}), error);
}

TEST(Lens, Trivial) {
  for (i64 k : {3, 5, 7, 11}) {
    const PrimeK K(k);
    EXPECT_EQ(lens_zprime(1, 0, K), CycInt::one(K));
    EXPECT_EQ(lens_zprime(-1, 0, K), CycInt::one(K));
  }
}

TEST(Lens, Representatives) {
  for (i64 k : {5, 7, 11, 13}) {
    const PrimeK K(k);
    for (i64 p = -12; p <= 12; ++p)
      for (i64 q = 1; q < std::max<i64>(2, std::abs(p)); ++q) {
        if (p == 0 || gcd(p, q) != 1 || p % k == 0) continue;
        const CycInt z = lens_zprime(p, q, K);
        EXPECT_EQ(z, lens_zprime(p, q + std::abs(p), K));
        EXPECT_EQ(z, lens_zprime(p, q - 3 * std::abs(p), K));
        // L(p,q) and L(p,q') are homeomorphic when q q' = 1 mod p
        const i64 qi = std::abs(p) == 1 ? 0 : inv_mod(q, std::abs(p));
        EXPECT_EQ(z, lens_zprime(p, qi, K)) << p << "/" << q << " K=" << k;
      }
  }
}

TEST(Lens, MatchesOracle) {
  for (i64 k : {5, 7, 11, 13, 17, 19, 23}) {
    const PrimeK K(k);
    for (i64 p = -12; p <= 12; ++p)
      for (i64 q = 1; q < std::max<i64>(2, std::abs(p)); ++q) {
        if (p == 0 || gcd(p, q) != 1 || p % k == 0) continue;
        const auto want = zprime_numeric(ManifoldSpec::lens(p, q), K);
        EXPECT_NEAR(std::abs(eval_complex(lens_zprime(p, q, K)) - want), 0, 1e-9) << p << "/" << q << " K=" << k;
      }
  }
}

TEST(Lens, Errors) {
  const PrimeK K(5);
  EXPECT_THROW(lens_zprime(0, 1, K), error);
  EXPECT_THROW(lens_zprime(4, 2, K), error);
  try {
    lens_zprime(10, 3, K);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::p_divisible_by_k);
  }
}

TEST(LensLambda, Values) {
  const auto l = lens_lambda_series(2, 1, 4).lambda;
  EXPECT_EQ(l[0], 1);
  EXPECT_EQ(l[1], 0);
  EXPECT_EQ(l[2], mpq_class(-1, 32));
  EXPECT_EQ(lens_lambda_series(1, 0, 5).lambda, std::vector<mpq_class>({1, 0, 0, 0, 0, 0}));
  for (i64 p = -9; p <= 9; ++p)
    for (i64 q = 1; q < std::max<i64>(2, std::abs(p)); ++q) {
      if (p == 0 || gcd(p, q) != 1) continue;
      const auto a = lens_lambda_series(p, q, 6).lambda;
      EXPECT_EQ(a[0], 1);
      EXPECT_EQ(a, lens_lambda_series(p, q + std::abs(p), 6).lambda);
    }
}

TEST(LensLambda, CassonWalkerSign) {
  // lambda_1 flips sign under orientation reversal L(p,q) -> L(p,-q) = L(-p,q)
  for (i64 p = 2; p <= 9; ++p)
    for (i64 q = 1; q < p; ++q) {
      if (gcd(p, q) != 1) continue;
      EXPECT_EQ(lens_lambda_series(p, q, 1).lambda[1], -lens_lambda_series(p, p - q, 1).lambda[1]);
    }
}

TEST(Seifert, MatchesOracle) {
  for (const auto& f : seifert_cases)
    for (i64 k : {7, 11, 13, 17, 19}) {
      if (!admissible(f, k)) continue;
      const PrimeK K(k);
      const auto M = ManifoldSpec::seifert(f);
      const auto d = seifert_zprime_detail(std::get<Seifert>(M.v).data, K);
      EXPECT_NEAR(std::abs(eval_complex(d.value) - zprime_numeric(M, K)), 0, 1e-9) << M.id() << " K=" << k;
      EXPECT_EQ(d.eighth % 4, 0);
    }
}

TEST(Seifert, SingleFiberIsLens) {
  // one exceptional fibre p/q is L(q,p)
  for (i64 k : {7, 11, 13})
    for (i64 p = -7; p <= 7; ++p)
      for (i64 q = -7; q <= 7; ++q) {
        if (p == 0 || q == 0 || gcd(p, q) != 1 || p % k == 0 || q % k == 0) continue;
        const PrimeK K(k);
        EXPECT_EQ(seifert_zprime(SeifertData({{p, q}}), K), lens_zprime(q, p, K)) << p << "/" << q;
      }
}

TEST(Seifert, Errors) {
  const PrimeK K(7);
  EXPECT_THROW(seifert_zprime(SeifertData({{2, 1}, {7, 1}, {3, 1}}), K), error);
  try {
    seifert_zprime(SeifertData({{2, 1}, {3, 7}, {5, 2}}), K);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::chain_degenerate);
  }
}

TEST(SeifertLambda, Basics) {
  for (const auto& f : seifert_cases) {
    const auto l = seifert_lambda_series(SeifertData(f), 5).lambda;
    EXPECT_EQ(l[0], 1);
  }
  // a single fibre agrees with the lens series of L(q,p)
  for (auto [p, q] : Fibers{{2, 1}, {3, -1}, {5, 2}, {-7, 3}})
    EXPECT_EQ(seifert_lambda_series(SeifertData({{p, q}}), 5).lambda, lens_lambda_series(q, p, 5).lambda) << p << "/" << q;
}
