#include <gtest/gtest.h>

#include <complex>
#include <random>

#include "qinv/cyclotomic.hpp"

using namespace qinv;

namespace {

std::vector<i64> primes_in(i64 lo, i64 hi) {
  std::vector<i64> v;
  for (i64 k = lo; k <= hi; ++k)
    if (k > 2 && is_prime(k)) v.push_back(k);
  return v;
}

CycInt random_cyc(const PrimeK& K, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-20, 20);
  std::vector<mpz_class> c(static_cast<std::size_t>(K.K() - 1));
  for (auto& x : c) x = d(rng);
  return CycInt::from_coeffs(K, c);
}


}  // namespace

TEST(CycInt, RingBasics) {
  const PrimeK K(5);
  EXPECT_EQ(CycInt::qpow(5, K), CycInt::one(K));
  CycInt s = CycInt::zero(K);
  for (int e = 0; e < 5; ++e) s += CycInt::qpow(e, K);
  EXPECT_TRUE(s.is_zero());
  EXPECT_EQ(CycInt::qpow(2, K) * CycInt::qpow(4, K), CycInt::qpow(1, K));
  EXPECT_EQ(CycInt::qpow(-1, K), CycInt::qpow(4, K));
  EXPECT_THROW(CycInt::one(K) + CycInt::one(PrimeK(7)), error);
}

TEST(CycInt, RingAxiomsRandom) {
  std::mt19937 rng(11);
  for (i64 k : {3, 5, 7, 13}) {
    const PrimeK K(k);
    for (int t = 0; t < 20; ++t) {
      const CycInt a = random_cyc(K, rng), b = random_cyc(K, rng), c = random_cyc(K, rng);
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * b, b * a);
      EXPECT_TRUE((a - a).is_zero());
    }
  }
}

TEST(XPoly, BasisChange) {
  const PrimeK K(5);
  const XPoly q = to_xpoly(CycInt::qpow(1, K));
  EXPECT_EQ(q[0], 1);
  EXPECT_EQ(q[1], 1);
  const XPoly q2 = to_xpoly(CycInt::qpow(2, K));
  EXPECT_EQ(q2[0], 1);
  EXPECT_EQ(q2[1], 2);
  EXPECT_EQ(q2[2], 1);
  const XPoly z = to_xpoly(CycInt::zero(K));
  for (const auto& c : z.coeffs()) EXPECT_EQ(c, 0);
  std::mt19937 rng(3);
  for (i64 k : {5, 7, 11, 31}) {
    const PrimeK P(k);
    for (int t = 0; t < 10; ++t) {
      const CycInt a = random_cyc(P, rng);
      EXPECT_EQ(from_xpoly(to_xpoly(a)), a);
    }
  }
}

TEST(XOrder, Examples) {
  const PrimeK K(5);
  EXPECT_EQ(x_order(CycInt::one(K)), 0);
  EXPECT_EQ(x_order(CycInt::constant(K, 5)), 4);
  EXPECT_EQ(x_order(gauss_sum(1, K)), 2);
  EXPECT_EQ(x_order(CycInt::zero(K)), 4);
  EXPECT_EQ(x_order(xpow(3, K)), 3);
}

TEST(Diamond, Examples) {
  const PrimeK K(5);
  EXPECT_EQ(diamond(CycInt::qpow(1, K)), TruncPoly(K, {1, 1, 0}));
  EXPECT_EQ(diamond(CycInt::zero(K)), TruncPoly(K, {0, 0, 0}));
  // sum_a q^{a^2} at K=5, frozen from a direct summation
  EXPECT_EQ(diamond(gauss_sum(1, K)), TruncPoly(K, {0, 0, 2}));
}

TEST(Diamond, RingHomomorphism) {
  std::mt19937 rng(7);
  for (i64 k : primes_in(3, 31)) {
    const PrimeK K(k);
    for (int t = 0; t < 8; ++t) {
      const CycInt a = random_cyc(K, rng), b = random_cyc(K, rng);
      EXPECT_EQ(diamond(a * b), diamond(a) * diamond(b)) << k;
      EXPECT_EQ(diamond(a + b), diamond(a) + diamond(b)) << k;
    }
  }
}

TEST(GaussSum, Examples) {
  const PrimeK K(5);
  EXPECT_EQ(gauss_sum(0, K), CycInt::constant(K, 5));
  EXPECT_EQ(pow(gauss_sum(1, K), 2), CycInt::constant(K, 5));
  EXPECT_EQ(gauss_sum(2, K), -gauss_sum(1, K));
  // canonical coefficients, frozen from a direct summation
  const std::vector<mpz_class> want{-1, 0, -2, -2};
  EXPECT_EQ(gauss_sum(1, K).coeffs(), want);
}

TEST(GaussSum, SquareOrderAndCharacter) {
  for (i64 k : primes_in(3, 101)) {
    const PrimeK K(k);
    const CycInt G = gauss_sum(1, K);
    EXPECT_EQ(G * G, CycInt::constant(K, K.kappa() * k)) << k;
    EXPECT_EQ(x_order(G), K.half()) << k;
    if (k <= 31)
      for (i64 c = 1; c < k; ++c) EXPECT_EQ(gauss_sum(c, K), G * mpz_class(legendre(c, K))) << k << " " << c;
  }
}

TEST(GaussSum, NumericEmbedding) {
  for (i64 k : primes_in(3, 31)) {
    const PrimeK K(k);
    const auto g = eval_complex(gauss_sum(1, K));
    const auto want = std::sqrt(double(k)) * std::polar(1.0, M_PI * (1 - K.kappa()) / 4);
    EXPECT_NEAR(std::abs(g - want), 0, 1e-12) << k;
  }
  const PrimeK K(5);
  EXPECT_NEAR(std::abs(eval_complex(CycInt::qpow(1, K)) - std::polar(1.0, 2 * M_PI / 5)), 0, 1e-14);
}

TEST(CompletedSquare, Exhaustive) {
  for (i64 k : {5, 7, 11, 13}) {
    const PrimeK K(k);
    const CycInt G = gauss_sum(1, K);
    for (i64 p = 1; p < k; ++p)
      for (i64 q = 1; q < k; ++q) {
        const i64 c = K.red(p * inv_mod(q, k));
        const i64 cs = K.red(inv_mod(p, k) * q);
        for (i64 n = 1; n < k; ++n) {
          CycInt rhs = CycInt::qpow(-cs * n * n, K) * G;
          if (legendre(c, K) < 0) rhs = -rhs;
          ASSERT_EQ(completed_square_lhs(c, n, K), rhs) << k << " " << p << " " << q << " " << n;
          ASSERT_EQ(completed_square_rhs(c, n, K), rhs);
        }
      }
  }
}

TEST(CompletedSquare, OpenRangeMissesBoundaryColor) {
  // with the boundary color K left out the identity fails: that term contributes 1
  const PrimeK K(7);
  std::vector<i64> full(7, 0);
  for (i64 a : odd_colors(7, OddRange::open_range)) ++full[static_cast<std::size_t>(K.red(K.red(a * a) + 2 * a))];
  EXPECT_EQ(CycInt::from_counts(K, full) + CycInt::one(K), completed_square_lhs(1, 1, K));
}

TEST(BetaSum, Sampled) {
  std::mt19937 rng(5);
  for (i64 k : primes_in(5, 31)) {
    const PrimeK K(k);
    const CycInt Gm = gauss_sum(-1, K);
    std::uniform_int_distribution<i64> d(1, k - 1);
    for (int t = 0; t < 20; ++t) {
      const i64 P = d(rng), H = d(rng), n = d(rng) - k / 2;
      // sum over odd beta of q^{-4^* P^* H b^2 - 2^* n b}
      std::vector<i64> full(static_cast<std::size_t>(k), 0);
      const i64 c = K.red(-K.inv4() * K.red(inv_mod(P, k) * H));
      for (i64 b : odd_colors(k)) ++full[static_cast<std::size_t>(K.red(c * K.red(b * b) - K.inv2() * K.red(n * b)))];
      CycInt rhs = CycInt::qpow(K.inv4() * K.red(P * inv_mod(H, k)) * K.red(n * n), K) * Gm;
      if (legendre(K.red(inv_mod(P, k) * H), K) < 0) rhs = -rhs;
      EXPECT_EQ(CycInt::from_counts(K, full), rhs) << k;
    }
  }
}

TEST(PowerSums, VanishModK) {
  for (i64 k : primes_in(3, 101))
    for (i64 m = 0; 2 * m < k - 1; ++m) {
      i64 s = 0;
      for (i64 a = 0; a < k; ++a) s = (s + pow_mod(a, 2 * m, k)) % k;
      // 0^0 = 1 makes the m = 0 sum equal K
      EXPECT_EQ(s, 0) << k << " " << m;
    }
}

TEST(OddGaussMoment, Examples) {
  const PrimeK K3(3);
  // the full period includes the boundary color 3 with 3^2 = 9
  EXPECT_EQ(odd_gauss_moment(1, 1, K3), CycInt::qpow(1, K3) * mpz_class(2) + CycInt::constant(K3, 9));
  EXPECT_EQ(odd_gauss_moment(1, 1, K3, OddRange::open_range), CycInt::qpow(1, K3) * mpz_class(2));
  for (i64 k : primes_in(3, 31)) {
    const PrimeK K(k);
    for (i64 p = 1; p < k; p += 3) {
      const CycInt g0 = odd_gauss_moment(p, 0, K);
      EXPECT_EQ(g0 * g0, CycInt::constant(K, K.kappa() * k));
    }
    for (i64 m = 0; m <= K.half(); ++m) EXPECT_GE(x_order(odd_gauss_moment(1, static_cast<unsigned>(m), K)), K.half() - m) << k << " " << m;
  }
}

TEST(BinomialMoments, OrderBound) {
  // sum over odd a of q^{p a^2} C((a + p' - 1)/2, m) with p' even
  for (i64 k : {5, 7, 11, 13}) {
    const PrimeK K(k);
    for (i64 p = 1; p < k; ++p) {
      const i64 pe = even_inv(Residue(p, K));
      for (i64 m = 0; m <= k - 1; ++m) {
        std::vector<mpz_class> full(static_cast<std::size_t>(k));
        for (i64 a : odd_colors(k)) {
          const i64 top = (a + pe - 1) / 2;
          mpz_class b = 0;
          if (top >= m) mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(top), static_cast<unsigned long>(m));
          else if (top < 0) {
            // C(top, m) for negative top
            mpz_bin_ui(b.get_mpz_t(), mpz_class(top).get_mpz_t(), static_cast<unsigned long>(m));
          }
          full[static_cast<std::size_t>(K.red(p * K.red(a * a)))] += b;
        }
        const CycInt s = CycInt::from_full(K, full);
        EXPECT_GE(x_order(s), std::max<i64>(0, K.half() - m / 2)) << k << " p=" << p << " m=" << m;
      }
    }
  }
}

TEST(Units, InvertAndU) {
  for (i64 k : {5, 7, 11}) {
    const PrimeK K(k);
    EXPECT_EQ(invert_unit(CycInt::qpow(1, K)), CycInt::qpow(k - 1, K));
    EXPECT_EQ(invert_unit(-CycInt::one(K)), -CycInt::one(K));
    const CycInt u = unit_u(K);
    const CycInt ui = invert_unit(u);
    EXPECT_EQ(u * ui, CycInt::one(K));
    EXPECT_EQ(gauss_sum(1, K), xpow(static_cast<unsigned>(K.half()), K) * ui);
  }
  try {
    invert_unit(CycInt::constant(PrimeK(5), 2));
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::not_a_unit);
  }
  const PrimeK K(5);
  const auto r = eval_complex(unit_u(K)) / eval_complex(xpow(2, K));
  EXPECT_NEAR(std::abs(r), 1 / std::sqrt(5.0), 1e-12);
}

TEST(SinRatio, MatchesTrig) {
  for (i64 k : primes_in(3, 31)) {
    const PrimeK K(k);
    for (i64 a = -2 * k; a <= 2 * k; ++a) {
      const double want = std::sin(M_PI * double(a) / double(k)) / std::sin(M_PI / double(k));
      EXPECT_NEAR(std::abs(eval_complex(sin_ratio(a, K)) - want), 0, 1e-12) << k << " " << a;
      // zratio = (-1)^{a+1} sin_ratio
      const CycInt z = zratio(a, K);
      EXPECT_EQ(z, floor_mod(a, 2) ? sin_ratio(a, K) : -sin_ratio(a, K)) << k << " " << a;
    }
  }
}
