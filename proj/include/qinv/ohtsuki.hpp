#pragma once

#include <map>
#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "arith.hpp"
#include "closedform.hpp"
#include "cyclotomic.hpp"
#include "manifold.hpp"
#include "nt.hpp"
#include "series.hpp"
#include "surgery.hpp"
#include "truncpoly.hpp"

namespace qinv {

inline CycInt zprime_exact(const ManifoldSpec& M, const PrimeK& K) {
  if (auto* l = std::get_if<Lens>(&M.v)) return lens_zprime(l->p, l->q, K);
  if (auto* s = std::get_if<Seifert>(&M.v)) return seifert_zprime(s->data, K);
  return exact_p1(std::get<P1Surgery>(M.v), K);
}

// Closed-form lambda series; unknot/unlink surgeries are connected sums of L(-p_j, 1).
inline LambdaSeries lambda_series(const ManifoldSpec& M, std::size_t D) {
  if (auto* l = std::get_if<Lens>(&M.v)) return lens_lambda_series(l->p, l->q, D);
  if (auto* s = std::get_if<Seifert>(&M.v)) return seifert_lambda_series(s->data, D);
  const auto& ps = std::get<P1Surgery>(M.v);
  const JonesTable J = builtin_jones(ps.jones);
  if (J.id != "unknot" && J.id.rfind("unlink", 0) != 0 && J.id != "empty")
    fail(errc::unsupported, "no closed-form series for " + J.id);
  if (J.arity != ps.framings.size()) fail(errc::bad_spec, "framing count does not match the link");
  RatSeries r = RatSeries::constant(D, 1);
  for (i64 p : ps.framings) r = s_mul(r, lens_lambda_series(-p, 1, D).as_series());
  LambdaSeries out;
  out.manifold = M.id();
  out.n_max = D;
  out.lambda.assign(r.coeffs().begin(), r.coeffs().end());
  return out;
}

inline TruncPoly diamond_side(const ManifoldSpec& M, const PrimeK& K) {
  const mpz_class h = h1_order(M);
  if (K.red(h) == 0) fail(errc::h1_divisible_by_k, "K divides |H_1| = " + h.get_str());
  CycInt z = zprime_exact(M, K);
  z *= mpz_class(h * legendre(h, K));
  return diamond(z);
}

inline TruncPoly vee_side(const LambdaSeries& lambda, const PrimeK& K) { return vee(lambda.as_series(), K); }

struct IdentityReport {
  std::string manifold;
  i64 K = 0;
  std::optional<TruncPoly> lhs, rhs;
  bool equal = false;
  int first_mismatch = -1;
  bool ohtsuki_range = false;  // K > |H_1| as well as gcd(|H_1|, K) = 1
  std::string error;           // set when a precondition or assertion failed for this prime
  errc code = errc::bad_spec;
};

inline std::vector<IdentityReport> verify_identity(const ManifoldSpec& M, const std::vector<i64>& primes,
                                                   std::optional<LambdaSeries> source = std::nullopt) {
  std::vector<IdentityReport> out;
  i64 kmax = 3;
  for (i64 K : primes) kmax = std::max(kmax, K);
  const std::size_t D = static_cast<std::size_t>((kmax - 1) / 2);
  std::optional<LambdaSeries> lam = std::move(source);
  std::string series_error;
  errc series_code = errc::bad_spec;
  if (!lam) {
    try {
      lam = lambda_series(M, D);
    } catch (const error& e) {
      series_error = e.what();
      series_code = e.code();
    }
  }
  const mpz_class h = h1_order(M);
  for (i64 k : primes) {
    IdentityReport r;
    r.manifold = M.id();
    r.K = k;
    r.ohtsuki_range = h < k;
    try {
      const PrimeK K(k);
      if (!lam) fail(series_code, series_error);
      r.lhs = diamond_side(M, K);
      r.rhs = vee_side(*lam, K);
      r.first_mismatch = r.lhs->first_mismatch(*r.rhs);
      r.equal = r.first_mismatch < 0;
    } catch (const error& e) {
      r.error = e.what();
      r.code = e.code();
    }
    out.push_back(std::move(r));
  }
  return out;
}

// a/b with a = b r (mod m), |a| <= A, 0 < b <= B (Wang's half-extended Euclid).
inline std::optional<mpq_class> rational_reconstruct(const mpz_class& r, const mpz_class& m, const mpz_class& A, const mpz_class& B) {
  mpz_class r0 = m, r1 = r % m, t0 = 0, t1 = 1;
  if (r1 < 0) r1 += m;
  while (r1 > A) {
    const mpz_class q = r0 / r1;
    mpz_class tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (t1 == 0 || abs(t1) > B) return std::nullopt;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return std::nullopt;
  return rat(r1, t1);
}

// Denominator bound 2^{4n} n! (2n)! (9n)! |H|^n.
inline mpz_class lambda_denominator_bound(std::size_t n, const mpz_class& h) {
  mpz_class f1, f2, f3, hp;
  mpz_fac_ui(f1.get_mpz_t(), n);
  mpz_fac_ui(f2.get_mpz_t(), 2 * n);
  mpz_fac_ui(f3.get_mpz_t(), 9 * n);
  mpz_pow_ui(hp.get_mpz_t(), h.get_mpz_t(), n);
  mpz_class two;
  mpz_ui_pow_ui(two.get_mpz_t(), 2, 4 * n);
  return two * f1 * f2 * f3 * hp;
}

// The denominator of |H|^n lambda_n has no prime factor above 2n.
inline bool denominator_structure_ok(const mpq_class& lambda, std::size_t n, const mpz_class& h) {
  mpz_class hp;
  mpz_pow_ui(hp.get_mpz_t(), h.get_mpz_t(), n);
  mpq_class v = lambda * mpq_class(hp);
  v.canonicalize();
  mpz_class d = v.get_den();
  for (unsigned long p = 2; p <= 2 * n && d > 1; ++p)
    while (mpz_divisible_ui_p(d.get_mpz_t(), p)) d /= p;
  return d == 1;
}

struct ReconstructionResult {
  std::string manifold;
  std::size_t n_max = 0;
  std::vector<mpq_class> lambda;
  std::vector<mpz_class> modulus;            // product of the primes behind each lambda_n
  std::vector<std::vector<i64>> primes_used;  // including the held-out stability primes
  std::vector<bool> bound_ok, structure_ok;
  std::vector<i64> extra_primes;  // primes consumed beyond the requested list
};

struct ReconstructOptions {
  bool extend = true;     // consume further primes until stable
  i64 prime_limit = 2000;  // give up beyond this
  int stable_after = 2;   // consecutive confirming primes
};

inline ReconstructionResult reconstruct_lambda(const ManifoldSpec& M, std::vector<i64> primes, std::size_t n_max,
                                               ReconstructOptions opt = {}) {
  const mpz_class h = h1_order(M);
  std::sort(primes.begin(), primes.end());
  for (std::size_t i = 1; i < primes.size(); ++i)
    if (primes[i] == primes[i - 1]) fail(errc::bad_spec, "repeated prime " + std::to_string(primes[i]));
  for (i64 k : primes) PrimeK{k};

  std::map<i64, std::optional<TruncPoly>> cache;
  auto residues = [&](i64 k) -> const std::optional<TruncPoly>& {
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    std::optional<TruncPoly> v;
    const PrimeK K(k);
    if (K.red(h) != 0) v = diamond_side(M, K);
    return cache.emplace(k, std::move(v)).first->second;
  };
  auto next_prime = [](i64 k) {
    do ++k;
    while (!is_prime(k));
    return k;
  };

  ReconstructionResult res;
  res.manifold = M.id();
  res.n_max = n_max;
  std::set<i64> extra;
  for (std::size_t n = 0; n <= n_max; ++n) {
    std::vector<i64> pool;
    for (i64 k : primes)
      if (k >= static_cast<i64>(2 * n + 1) && k >= 3 && residues(k)) pool.push_back(k);
    i64 last = primes.empty() ? 2 : primes.back();
    auto grow = [&]() {
      if (!opt.extend) return false;
      do last = next_prime(last);
      while (last <= static_cast<i64>(2 * n) || !residues(last));
      if (last > opt.prime_limit) fail(errc::insufficient_modulus, "no stable value for lambda_" + std::to_string(n) + " below the prime limit");
      pool.push_back(last);
      if (std::find(primes.begin(), primes.end(), last) == primes.end()) extra.insert(last);
      return true;
    };
    const mpz_class bound = lambda_denominator_bound(n, h);
    std::optional<mpq_class> cand;
    int confirmations = 0;
    mpz_class m = 1, r = 0;
    std::size_t used = 0;
    while (true) {
      for (; used < pool.size(); ++used) {
        const i64 k = pool[used];
        const i64 rk = (*residues(k))[n];
        if (cand) {
          // held-out check against the current candidate
          if (rat_check(*cand, PrimeK(k)).value() == rk)
            ++confirmations;
          else
            cand.reset(), confirmations = 0;
        }
        // CRT: r' = r mod m, r' = rk mod k
        const mpz_class mk(k);
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), mpz_class(m % mk).get_mpz_t(), mk.get_mpz_t());
        mpz_class t = ((mpz_class(rk) - r) % mk) * inv % mk;
        if (t < 0) t += mk;
        r += m * t;
        m *= mk;
        if (!cand) {
          mpz_class A;
          mpz_sqrt(A.get_mpz_t(), mpz_class((m - 1) / 2).get_mpz_t());
          auto c = rational_reconstruct(r, m, A, A);
          if (c && bound % c->get_den() == 0 && denominator_structure_ok(*c, n, h)) {
            cand = c;
            confirmations = 0;
          }
        }
      }
      if (cand && (confirmations >= opt.stable_after || !opt.extend)) break;
      if (!grow()) {
        if (!cand) fail(errc::insufficient_modulus, "modulus too small for lambda_" + std::to_string(n));
        break;
      }
    }
    // every residue used must reduce back
    for (i64 k : pool)
      if (rat_check(*cand, PrimeK(k)).value() != (*residues(k))[n])
        fail(errc::inconsistent_residues, "lambda_" + std::to_string(n) + " disagrees mod " + std::to_string(k));
    res.lambda.push_back(*cand);
    res.modulus.push_back(m);
    res.primes_used.push_back(pool);
    res.bound_ok.push_back(bound % cand->get_den() == 0);
    res.structure_ok.push_back(denominator_structure_ok(*cand, n, h));
  }
  res.extra_primes.assign(extra.begin(), extra.end());
  return res;
}

}  // namespace qinv
