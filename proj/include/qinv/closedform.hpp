#pragma once

#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "arith.hpp"
#include "cyclotomic.hpp"
#include "manifold.hpp"
#include "nt.hpp"
#include "series.hpp"
#include "surgery.hpp"

namespace qinv {

// prod_j (z^{-a_j} - z^{a_j}) / (z^{-1} - z)^{N-1} = sum_{n in support} C_n (z^{-n} - z^n)
struct CnTable {
  std::vector<i64> a;
  std::map<i64, mpz_class> C;
};

inline CnTable seifert_cn(const std::vector<i64>& a) {
  if (a.empty()) fail(errc::bad_spec, "C_n table needs at least one exponent");
  for (i64 x : a)
    if (x < 1) fail(errc::bad_spec, "C_n exponents must be positive");
  std::map<i64, mpz_class> P{{0, 1}};
  auto mul = [](const std::map<i64, mpz_class>& x, const std::map<i64, mpz_class>& y) {
    std::map<i64, mpz_class> r;
    for (const auto& [i, u] : x)
      for (const auto& [j, v] : y) r[i + j] += u * v;
    std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
    return r;
  };
  for (std::size_t j = 0; j + 1 < a.size(); ++j) {
    std::map<i64, mpz_class> g;
    for (i64 i = 0; i < a[j]; ++i) g[-(a[j] - 1) + 2 * i] += 1;
    P = mul(P, g);
  }
  P = mul(P, {{-a.back(), 1}, {a.back(), -1}});
  CnTable t{a, {}};
  for (const auto& [n, v] : P)
    if (n > 0) t.C[n] = -v;
  // re-verify the Laurent identity term by term
  for (const auto& [n, v] : P) {
    if (n == 0) fail(errc::integrality_failure, "C_n table has a z^0 term");
    const auto it = t.C.find(n < 0 ? -n : n);
    if (it == t.C.end() || (n < 0 ? it->second != v : -it->second != v)) fail(errc::integrality_failure, "C_n identity fails");
  }
  return t;
}

// L(p,q): legendre(|p|) sign(p) q^{3 s(q,p)^v} (z^{-p^*} - z^{p^*})/(z^{-1} - z).
// The last factor is (-1)^{p^*+1} sin(pi p^*/K)/sin(pi/K), which does not depend on the representative of p^*.
inline CycInt lens_zprime(i64 p, i64 q, const PrimeK& K) {
  if (p == 0) fail(errc::not_rhs, "L(0,q)");
  if (gcd(p, q) != 1) fail(errc::not_coprime, "lens space needs gcd(p,q) = 1");
  if (K.red(p) == 0) fail(errc::p_divisible_by_k, "p = " + std::to_string(p));
  const i64 ap = p < 0 ? -p : p;
  const i64 s = ap == 1 ? 0 : dedekind_vee(q, p, K).value();
  CycInt r = CycInt::qpow(3 * s, K) * zratio(inv_mod(p, K.K()), K);
  return legendre(ap, K) * sign(p) < 0 ? -r : r;
}

inline LambdaSeries lens_lambda_series(i64 p, i64 q, std::size_t D) {
  if (p == 0) fail(errc::not_rhs, "L(0,q)");
  if (gcd(p, q) != 1) fail(errc::not_coprime, "lens space needs gcd(p,q) = 1");
  const i64 ap = p < 0 ? -p : p;
  const mpq_class s = ap == 1 ? mpq_class(0) : dedekind_sum(q, p);
  RatSeries r = s_mul(q_power(3 * s, D), sinh_ratio(rat(1, p), D));
  r = s_scale(r, mpq_class(sign(p) * ap));
  if (r[0] != 1) fail(errc::bad_normalization, "lambda_0 = " + r[0].get_str());
  LambdaSeries out;
  out.manifold = ManifoldSpec::lens(p, q).id();
  out.n_max = D;
  out.lambda.assign(r.coeffs().begin(), r.coeffs().end());
  return out;
}

struct SeifertAssembly {
  CycInt value;
  i64 H_mod, W, e, sigma;
  i64 eighth;  // accumulated e^{i pi/4} power before reduction
};

// Exact Z' of X(p_1/q_1, ..., p_N/q_N). The prefactor is the product of the surgery phases,
// Gauss sums and signs; it must collapse to legendre(|H|) sign(H) q^e, and q^e must have
// the diamond image predicted by H/P and the Dedekind sums.
inline SeifertAssembly seifert_zprime_detail(const SeifertData& S0, const PrimeK& K) {
  const SeifertData S = S0.normalized();
  const std::size_t N = S.size();
  const i64 k = K.K();
  const int kap = K.kappa();
  const mpz_class P = S.P(), H = S.H();
  if (H == 0) fail(errc::h_zero, "H = 0");
  if (K.red(H) == 0) fail(errc::h1_divisible_by_k, "K divides |H_1|");
  i64 sig = -sign(rat(H, P));
  i64 phi = 0, rsum = 0, W = 0;
  mpz_class qprod = 1, pq = 1;
  std::vector<i64> astar;
  for (auto [p, q] : S.fractions) {
    if (K.red(p) == 0) fail(errc::p_divisible_by_k, "fiber p = " + std::to_string(p));
    if (K.red(q) == 0) fail(errc::chain_degenerate, "fiber q = " + std::to_string(q) + " vanishes mod K");
    const SL2 U = cf_expand(p, q).matrix();
    const i64 ps = inv_mod(p, k);
    sig += sign(p);
    phi += rademacher_phi(U);
    rsum += K.red(ps * K.red(U.r));
    W = K.red(W + K.red(q) * ps);
    qprod *= q;
    pq *= p * q;
    astar.push_back(ps);
  }
  i64 sgn_fib = 0;
  for (auto [p, q] : S.fractions) sgn_fib += sign(p);

  ExtendedPhase ph(k);
  // e^{-i pi kappa sigma/4} e^{-3 i pi sigma/4}, the N+1 factors of i and the N+1 Gauss-sum phases
  ph.eighth(-kap * sig - 3 * sig + 6 * kap * sig + 2 * static_cast<i64>(N + 1) + (1 - kap) * static_cast<i64>(N + 1));
  const i64 e = K.red(3 * K.inv4() * K.red(sig) - K.inv4() * K.red(phi) + K.inv4() * K.red(rsum));
  ph.qpow(e);
  ph.flip(legendre(abs(qprod), K));
  ph.flip((sgn_fib + 1) % 2 ? -1 : 1);
  ph.flip(legendre(pq, K) * legendre(-W, K));
  const CycInt pre = ph.reduce(K);

  const int lh = legendre(abs(H), K) * sign(H);
  if (pre != CycInt::qpow(e, K) * mpz_class(-lh))
    fail(errc::phase_not_reducible, "prefactor does not collapse to legendre(|H|) sign(H) q^e");

  mpq_class dsum = 0;
  for (auto [p, q] : S.fractions) dsum += (p == 1 || p == -1) ? mpq_class(0) : dedekind_sum(q, p);
  const mpq_class c = rat(H, P);
  const mpq_class expo = c / 4 - rat(3 * sign(c), 4) - 3 * dsum;
  if (diamond(CycInt::qpow(e, K)) != vee(q_power(expo, static_cast<std::size_t>(K.half())), K))
    fail(errc::diamond_mismatch, "diamond of the prefactor disagrees with the Dedekind phase");

  const i64 Ws = inv_mod(W, k);
  const CnTable T = seifert_cn(astar);
  CycInt sum = CycInt::zero(K);
  for (const auto& [n, C] : T.C) {
    const i64 nn = K.red(n);
    CycInt t = CycInt::qpow(K.inv4() * K.red(Ws * K.red(nn * nn + 1)), K) * zratio(Ws * nn, K);
    t *= C;
    sum += t;
  }
  CycInt z = CycInt::qpow(e, K) * sum;
  if (lh < 0) z = -z;
  return {z, K.red(H), W, e, sig, ph.a};
}

inline CycInt seifert_zprime(const SeifertData& S, const PrimeK& K) { return seifert_zprime_detail(S, K).value; }

namespace detail {

// sinh(a u)/u as a series in u
inline RatSeries sinh_over_u(const mpq_class& a, std::size_t M) {
  RatSeries r(M);
  mpz_class fact = 1;
  mpq_class pw = a;
  for (std::size_t k = 0; k <= M; k += 2) {
    if (k) {
      fact *= static_cast<unsigned long>(k * (k + 1));
      pw *= a * a;
    }
    r[k] = pw / mpq_class(fact);
  }
  return r;
}

}  // namespace detail

// Trivial-connection series of X(p_j/q_j). With c = H/P and g(u) = prod sinh(u/p_j)/sinh(u)^{N-2},
//   F(t) = e^{(t/2)(c - 3 sign c - 12 sum s(q_j,p_j))} (t/sinh t) H sum_{k>=1} g_{2k} (2k-1)!! c^{-k} t^{k-1},
// then t = (1/2) log(1+x).
inline LambdaSeries seifert_lambda_series(const SeifertData& S0, std::size_t D) {
  const SeifertData S = S0.normalized();
  const std::size_t N = S.size();
  const mpz_class P = S.P(), H = S.H();
  if (H == 0) fail(errc::h_zero, "H = 0");
  const mpq_class c = rat(H, P);
  const std::size_t T = D + 3, M = 2 * T + 2;

  RatSeries g = RatSeries::constant(M, 1);
  for (auto [p, q] : S.fractions) g = s_mul(g, detail::sinh_over_u(rat(1, p), M));
  const RatSeries s1 = detail::sinh_over_u(1, M);
  for (std::size_t j = 2; j < N; ++j) g = s_div(g, s1);
  for (std::size_t j = N; j < 2; ++j) g = s_mul(g, s1);
  // g(u) = u^2 * (series above), so g_{2k} is entry 2k-2

  RatSeries Gt(T);
  mpz_class df = 1;
  mpq_class ck = 1;
  for (std::size_t k = 1; k <= T + 1; ++k) {
    if (k > 1) df *= static_cast<unsigned long>(2 * k - 1);
    ck *= c;
    if (k - 1 <= T && 2 * k - 2 <= M) Gt[k - 1] = g[2 * k - 2] * mpq_class(df) / ck * mpq_class(H);
  }
  const RatSeries ts = s_div(RatSeries::constant(T, 1), detail::sinh_over_u(1, T));
  mpq_class dsum = 0;
  for (auto [p, q] : S.fractions) dsum += (p == 1 || p == -1) ? mpq_class(0) : dedekind_sum(q, p);
  const mpq_class ex = (c - 3 * sign(c) - 12 * dsum) / 2;
  const RatSeries expo = s_exp(RatSeries::monomial(T, 1, ex));
  const RatSeries Ft = s_mul(s_mul(Gt, ts), expo);
  const RatSeries r = s_compose(Ft.truncated(D), detail::half_log1p(D));
  if (r[0] != 1) fail(errc::bad_normalization, "lambda_0 = " + r[0].get_str());
  LambdaSeries out;
  out.manifold = "seifert(" + S0.str() + ")";
  out.n_max = D;
  out.lambda.assign(r.coeffs().begin(), r.coeffs().end());
  return out;
}

}  // namespace qinv
