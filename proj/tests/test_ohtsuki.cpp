#include <gtest/gtest.h>

#include "qinv/ohtsuki.hpp"

using namespace qinv;

namespace {

std::vector<i64> primes_in(i64 lo, i64 hi) {
  std::vector<i64> v;
  for (i64 k = lo; k <= hi; ++k)
    if (k > 2 && is_prime(k)) v.push_back(k);
  return v;
}

// K | |H_1| is outside the identity's range and is skipped; every other error fails
void expect_identity(const ManifoldSpec& M, const std::vector<i64>& primes) {
  const mpz_class h = h1_order(M);
  for (const auto& r : verify_identity(M, primes)) {
    if (h % r.K == 0) {
      EXPECT_EQ(r.code, errc::h1_divisible_by_k);
      continue;
    }
    EXPECT_TRUE(r.error.empty()) << M.id() << " K=" << r.K << ": " << r.error;
    EXPECT_TRUE(r.equal) << M.id() << " K=" << r.K << " first mismatch " << r.first_mismatch;
  }
}

}  // namespace

TEST(Sides, Examples) {
  const PrimeK K5(5), K7(7);
  EXPECT_EQ(diamond_side(ManifoldSpec::lens(1, 0), K5).coeffs(), std::vector<i64>({1, 0, 0}));
  EXPECT_EQ(diamond_side(ManifoldSpec::lens(2, 1), K5).coeffs(), std::vector<i64>({1, 0, 2}));
  EXPECT_EQ(diamond_side(ManifoldSpec::lens(3, 1), K7).coeffs(), std::vector<i64>({1, 6, 2, 4}));
  EXPECT_EQ(vee_side(lens_lambda_series(2, 1, 2), K5), diamond_side(ManifoldSpec::lens(2, 1), K5));
  LambdaSeries one;
  one.lambda = {1, 0, 0, 0};
  EXPECT_EQ(vee_side(one, K7).coeffs(), std::vector<i64>({1, 0, 0, 0}));
  // terms beyond x^{(K-1)/2} are dropped
  one.lambda = {1, 0, 0, 0, 5, 7};
  EXPECT_EQ(vee_side(one, K7).coeffs(), std::vector<i64>({1, 0, 0, 0}));
}

TEST(Sides, H1DivisibleByK) {
  try {
    diamond_side(ManifoldSpec::lens(5, 1), PrimeK(5));
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::h1_divisible_by_k);
  }
}

TEST(Identity, Sphere) { expect_identity(ManifoldSpec::lens(1, 0), primes_in(3, 31)); }

TEST(Identity, LensFamily) {
  const auto primes = primes_in(5, 31);
  for (i64 p = -12; p <= 12; ++p)
    for (i64 q = 1; q < std::max<i64>(2, std::abs(p)); ++q) {
      if (p == 0 || gcd(p, q) != 1) continue;
      const auto M = ManifoldSpec::lens(p, q);
      for (const auto& r : verify_identity(M, primes)) {
        if (std::abs(p) % r.K == 0) {
          EXPECT_EQ(r.code, errc::h1_divisible_by_k);
          continue;
        }
        EXPECT_TRUE(r.error.empty()) << r.error;
        EXPECT_TRUE(r.equal) << M.id() << " K=" << r.K;
        EXPECT_EQ(r.ohtsuki_range, std::abs(p) < r.K);
      }
    }
}

TEST(Identity, Seifert) {
  expect_identity(ManifoldSpec::seifert({{2, 1}, {3, 1}, {5, -4}}), primes_in(7, 23));
  expect_identity(ManifoldSpec::seifert({{2, -1}, {3, 2}, {7, 3}}), primes_in(11, 23));
  expect_identity(ManifoldSpec::seifert({{-3, 2}, {5, 2}, {4, -1}}), primes_in(7, 23));
  expect_identity(ManifoldSpec::seifert({{2, 1}, {3, -1}, {7, 2}, {5, 3}}), primes_in(11, 19));
}

TEST(Identity, UnknotAndUnlinkSurgery) {
  expect_identity(ManifoldSpec::p1("unknot", {3}), primes_in(5, 13));
  expect_identity(ManifoldSpec::p1("unlink2", {2, -3}), {5, 7, 11});
  expect_identity(ManifoldSpec::p1("empty", {}), {5, 7});
}

TEST(Identity, ErrorsAreRecorded) {
  const auto r = verify_identity(ManifoldSpec::seifert({{2, 1}, {3, 7}, {5, 1}}), {7, 11});
  ASSERT_EQ(r.size(), 2u);
  EXPECT_FALSE(r[0].error.empty());
  EXPECT_FALSE(r[0].equal);
  EXPECT_TRUE(r[1].error.empty());
  EXPECT_TRUE(r[1].equal);
}

TEST(Reconstruct, RationalReconstruction) {
  const mpz_class m = mpz_class(1000003) * 1000033;
  const mpq_class v(-355, 113);
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), mpz_class(113).get_mpz_t(), m.get_mpz_t());
  const mpz_class r = ((mpz_class(-355) * inv) % m + m) % m;
  mpz_class A;
  mpz_sqrt(A.get_mpz_t(), mpz_class((m - 1) / 2).get_mpz_t());
  const auto got = rational_reconstruct(r, m, A, A);
  ASSERT_TRUE(got);
  EXPECT_EQ(*got, v);
}

TEST(Reconstruct, DenominatorChecks) {
  EXPECT_TRUE(denominator_structure_ok(mpq_class(-1, 32), 2, 2));
  EXPECT_FALSE(denominator_structure_ok(mpq_class(1, 7), 2, 1));
  EXPECT_TRUE(denominator_structure_ok(mpq_class(1, 7), 1, 7));
  EXPECT_EQ(lambda_denominator_bound(0, 5), 1);
  EXPECT_EQ(lambda_denominator_bound(1, 3), mpz_class(16) * 1 * 2 * 362880 * 3);
}

TEST(Reconstruct, Lens) {
  for (auto [p, q] : std::vector<std::pair<i64, i64>>{{3, 1}, {5, 2}, {2, 1}}) {
    const auto M = ManifoldSpec::lens(p, q);
    const auto r = reconstruct_lambda(M, {7, 11, 13, 17, 19}, 5);
    const auto want = lens_lambda_series(p, q, 5).lambda;
    ASSERT_EQ(r.lambda.size(), 6u);
    for (std::size_t n = 0; n <= 5; ++n) {
      EXPECT_EQ(r.lambda[n], want[n]) << M.id() << " n=" << n;
      EXPECT_TRUE(r.bound_ok[n]);
      EXPECT_TRUE(r.structure_ok[n]);
    }
    EXPECT_EQ(r.lambda[0], 1);
  }
}

TEST(Reconstruct, Seifert) {
  const auto M = ManifoldSpec::seifert({{2, 1}, {3, 1}, {5, -4}});
  const auto r = reconstruct_lambda(M, primes_in(7, 23), 3);
  EXPECT_EQ(r.lambda, seifert_lambda_series(std::get<Seifert>(M.v).data, 3).lambda);
}

TEST(Reconstruct, ResiduesReduceBack) {
  const auto M = ManifoldSpec::lens(7, 2);
  const auto r = reconstruct_lambda(M, primes_in(11, 31), 3);
  for (std::size_t n = 0; n <= 3; ++n)
    for (i64 k : r.primes_used[n]) EXPECT_EQ(rat_check(r.lambda[n], PrimeK(k)).value(), diamond_side(M, PrimeK(k))[n]);
}

TEST(Reconstruct, StructureUpToSix) {
  for (const auto& M : {ManifoldSpec::lens(3, 1), ManifoldSpec::lens(7, 3), ManifoldSpec::seifert({{2, 1}, {3, 1}, {5, -4}})}) {
    const auto r = reconstruct_lambda(M, primes_in(13, 43), 6);
    for (std::size_t n = 0; n <= 6; ++n) EXPECT_TRUE(r.structure_ok[n]) << M.id() << " " << n;
  }
}

TEST(Reconstruct, Errors) {
  EXPECT_THROW(reconstruct_lambda(ManifoldSpec::lens(3, 1), {7, 9}, 1), error);
  EXPECT_THROW(reconstruct_lambda(ManifoldSpec::lens(3, 1), {7, 7}, 1), error);
}
