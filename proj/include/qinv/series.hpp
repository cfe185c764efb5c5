#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "arith.hpp"
#include "truncpoly.hpp"

namespace qinv {

// Power series in x with exact rational coefficients, truncated at degree D.
class RatSeries {
 public:
  explicit RatSeries(std::size_t D = 0) : c_(D + 1) {}
  RatSeries(std::size_t D, std::vector<mpq_class> c) : c_(std::move(c)) { c_.resize(D + 1); }

  static RatSeries constant(std::size_t D, const mpq_class& v) {
    RatSeries r(D);
    r.c_[0] = v;
    return r;
  }
  static RatSeries monomial(std::size_t D, std::size_t n, const mpq_class& v = 1) {
    RatSeries r(D);
    if (n <= D) r.c_[n] = v;
    return r;
  }

  std::size_t cap() const { return c_.size() - 1; }
  const mpq_class& operator[](std::size_t i) const { return c_[i]; }
  mpq_class& operator[](std::size_t i) { return c_[i]; }
  const std::vector<mpq_class>& coeffs() const { return c_; }

  RatSeries truncated(std::size_t D) const {
    RatSeries r(D);
    for (std::size_t i = 0; i <= std::min(D, cap()); ++i) r.c_[i] = c_[i];
    return r;
  }

  friend bool operator==(const RatSeries& a, const RatSeries& b) { return a.c_ == b.c_; }

 private:
  std::vector<mpq_class> c_;
};

inline RatSeries s_add(const RatSeries& a, const RatSeries& b) {
  const std::size_t D = std::min(a.cap(), b.cap());
  RatSeries r(D);
  for (std::size_t i = 0; i <= D; ++i) r[i] = a[i] + b[i];
  return r;
}

inline RatSeries s_sub(const RatSeries& a, const RatSeries& b) {
  const std::size_t D = std::min(a.cap(), b.cap());
  RatSeries r(D);
  for (std::size_t i = 0; i <= D; ++i) r[i] = a[i] - b[i];
  return r;
}

inline RatSeries s_scale(const RatSeries& a, const mpq_class& s) {
  RatSeries r(a.cap());
  for (std::size_t i = 0; i <= a.cap(); ++i) r[i] = a[i] * s;
  return r;
}

inline RatSeries s_mul(const RatSeries& a, const RatSeries& b) {
  const std::size_t D = std::min(a.cap(), b.cap());
  RatSeries r(D);
  for (std::size_t i = 0; i <= D; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j <= D; ++j)
      if (b[j] != 0) r[i + j] += a[i] * b[j];
  }
  return r;
}

inline RatSeries s_div(const RatSeries& a, const RatSeries& b) {
  if (b[0] == 0) fail(errc::non_unit_divisor, "divisor has zero constant term");
  const std::size_t D = std::min(a.cap(), b.cap());
  RatSeries r(D);
  for (std::size_t n = 0; n <= D; ++n) {
    mpq_class s = a[n];
    for (std::size_t k = 0; k < n; ++k) s -= r[k] * b[n - k];
    r[n] = s / b[0];
  }
  return r;
}

inline RatSeries s_exp(const RatSeries& a) {
  if (a[0] != 0) fail(errc::nonzero_constant_in_exp, "exp argument has constant term " + a[0].get_str());
  const std::size_t D = a.cap();
  RatSeries r(D);
  r[0] = 1;
  // r' = a' r
  for (std::size_t n = 1; n <= D; ++n) {
    mpq_class s = 0;
    for (std::size_t k = 1; k <= n; ++k)
      if (a[k] != 0) s += mpq_class(static_cast<long>(k)) * a[k] * r[n - k];
    r[n] = s / static_cast<long>(n);
  }
  return r;
}

// log of a series with constant term 1.
inline RatSeries s_log(const RatSeries& a) {
  if (a[0] != 1) fail(errc::bad_normalization, "log needs constant term 1, got " + a[0].get_str());
  const std::size_t D = a.cap();
  RatSeries da(D), r(D);
  for (std::size_t n = 1; n <= D; ++n) da[n - 1] = a[n] * static_cast<long>(n);
  RatSeries q = s_div(da, a);
  for (std::size_t n = 1; n <= D; ++n) r[n] = q[n - 1] / static_cast<long>(n);
  return r;
}

inline RatSeries log1p(std::size_t D) {
  RatSeries r(D);
  for (std::size_t n = 1; n <= D; ++n) r[n] = mpq_class((n % 2) ? 1 : -1, static_cast<unsigned long>(n));
  return r;
}

// exp(r log(1+x))
inline RatSeries q_power(const mpq_class& r, std::size_t D) { return s_exp(s_scale(log1p(D), r)); }

// f(g) for g with zero constant term.
inline RatSeries s_compose(const RatSeries& f, const RatSeries& g) {
  if (g[0] != 0) fail(errc::nonzero_constant_in_exp, "inner series must vanish at 0");
  const std::size_t D = std::min(f.cap(), g.cap());
  RatSeries r = RatSeries::constant(D, f[D]);
  for (std::size_t k = D; k-- > 0;) {
    r = s_mul(r, g);
    r[0] += f[k];
  }
  return r;
}

// (q^{a/2} - q^{-a/2})/(q^{1/2} - q^{-1/2}), q = 1 + x.
inline RatSeries sinh_ratio(const mpq_class& a, std::size_t D) {
  const mpq_class h(1, 2);
  RatSeries num = s_sub(q_power(a * h, D + 1), q_power(-a * h, D + 1));
  RatSeries den = s_sub(q_power(h, D + 1), q_power(-h, D + 1));
  RatSeries n1(D), d1(D);
  for (std::size_t i = 0; i <= D; ++i) {
    n1[i] = num[i + 1];
    d1[i] = den[i + 1];
  }
  return s_div(n1, d1);
}

inline TruncPoly vee(const RatSeries& s, const PrimeK& K) {
  TruncPoly r(K);
  const std::size_t top = r.size();
  if (s.cap() + 1 < top) fail(errc::insufficient_terms, "series cap " + std::to_string(s.cap()) + " below degree " + std::to_string(top - 1));
  for (std::size_t n = 0; n < top; ++n) {
    if (K.red(s[n].get_den()) == 0)
      fail(errc::denominator_divisible_by_k, "degree " + std::to_string(n) + " coefficient " + s[n].get_str());
    r[n] = rat_check(s[n], K).value();
  }
  return r;
}

inline TruncPoly log_vee(const PrimeK& K) {
  TruncPoly r(K);
  for (std::size_t n = 0; n + 1 < r.size(); ++n) {
    const i64 v = inv_mod(static_cast<i64>(n + 1), K.K());
    r[n + 1] = (n % 2) ? K.red(-v) : v;
  }
  return r;
}

// alpha -> (m!)^* alpha (alpha-1)...(alpha-m+1) over Z_K.
class BinomVee {
 public:
  BinomVee(unsigned m, const PrimeK& K) : m_(m), K_(K) {
    if (m >= static_cast<unsigned>(K.K())) fail(errc::factorial_not_invertible, "m=" + std::to_string(m) + " >= K");
    i64 f = 1;
    for (unsigned i = 2; i <= m; ++i) f = f * i % K.K();
    finv_ = inv_mod(f, K.K());
  }
  i64 operator()(i64 alpha) const {
    i64 r = finv_;
    for (unsigned i = 0; i < m_; ++i) r = r * K_.red(alpha - static_cast<i64>(i)) % K_.K();
    return r;
  }

 private:
  unsigned m_;
  PrimeK K_;
  i64 finv_;
};

inline BinomVee binom_vee(unsigned m, const PrimeK& K) { return BinomVee(m, K); }

inline TruncPoly tp_inverse(const TruncPoly& a) {
  const PrimeK K(a.modulus());
  if (a[0] == 0) fail(errc::non_unit_divisor, "truncated inverse of a non-unit");
  TruncPoly r(K);
  const i64 inv0 = inv_mod(a[0], K.K());
  r[0] = inv0;
  for (std::size_t n = 1; n < r.size(); ++n) {
    i64 s = 0;
    for (std::size_t k = 1; k <= n; ++k) s = (s + a[k] * r[n - k]) % K.K();
    r[n] = K.red(-s * inv0);
  }
  return r;
}

inline TruncPoly tp_pow(TruncPoly a, unsigned m) {
  TruncPoly r = TruncPoly::constant(PrimeK(a.modulus()), 1);
  while (m) {
    if (m & 1) r = r * a;
    m >>= 1;
    if (m) a = a * a;
  }
  return r;
}

inline TruncPoly x_over_log_pow(unsigned m, const PrimeK& K) {
  // log(1+x)/x = sum (-1)^n x^n/(n+1)
  TruncPoly l(K);
  for (std::size_t n = 0; n < l.size(); ++n) {
    const i64 v = inv_mod(static_cast<i64>(n + 1), K.K());
    l[n] = (n % 2) ? K.red(-v) : v;
  }
  return tp_pow(tp_inverse(l), m);
}

// Closed form for the diamond image of the normalized Gauss moment
//   e^{i pi (kappa-1)/4} K^{-1/2} sum' q^{p q^* a^2} a^{2m} x^m,
// valid in degrees below (K+1)/2 - m. Carries the factor (p^* q)^m that the
// completed square q^{-p^* q n^2} produces.
inline TruncPoly gauss_moment_diamond(i64 p, i64 q, unsigned m, const PrimeK& K) {
  const i64 Kv = K.K();
  const i64 pq = K.red(p) * inv_mod(q, Kv) % Kv;
  i64 c = legendre(pq, K);
  if (m % 2) c = -c;
  c = K.red(c * pow_mod(K.inv2(), 2 * m, Kv));
  for (unsigned i = 2; i <= 2 * m; ++i) c = c * i % Kv;
  i64 f = 1;
  for (unsigned i = 2; i <= m; ++i) f = f * i % Kv;
  c = c * inv_mod(f, Kv) % Kv;
  c = c * pow_mod(inv_mod(p, Kv) * K.red(q) % Kv, m, Kv) % Kv;
  return x_over_log_pow(m, K) * c;
}

enum class Provenance { closed_form, reconstruction };

inline const char* provenance_name(Provenance p) {
  return p == Provenance::closed_form ? "closed-form" : "reconstruction";
}

struct LambdaSeries {
  std::string manifold;
  std::size_t n_max = 0;
  std::vector<mpq_class> lambda;
  Provenance provenance = Provenance::closed_form;

  RatSeries as_series() const { return RatSeries(lambda.size() - 1, lambda); }
};

namespace detail {

// Series with coefficients a + b i, a, b rational.
struct CSeries {
  RatSeries re, im;
};

inline CSeries c_mul(const CSeries& a, const CSeries& b) {
  return {s_sub(s_mul(a.re, b.re), s_mul(a.im, b.im)), s_add(s_mul(a.re, b.im), s_mul(a.im, b.re))};
}

inline CSeries c_div(const CSeries& a, const CSeries& b) {
  // a/b = a * conj(b) / |b|^2
  RatSeries nb = s_add(s_mul(b.re, b.re), s_mul(b.im, b.im));
  CSeries conj{b.re, s_scale(b.im, -1)};
  CSeries num = c_mul(a, conj);
  return {s_div(num.re, nb), s_div(num.im, nb)};
}

inline RatSeries half_log1p(std::size_t D) { return s_scale(log1p(D), mpq_class(1, 2)); }

}  // namespace detail

// (pi/K)/sin(pi/K) * exp(sum_n S_n t^n) with t = i pi/K = (1/2) log(1+x).
// S[0] is ignored. pi/K = -i t, so the trigonometric factor is built over Q(i)
// and its imaginary part must cancel.
inline RatSeries lambda_from_S(const std::vector<mpq_class>& S, std::size_t D) {
  const RatSeries t = detail::half_log1p(D);
  const detail::CSeries theta{RatSeries(D), s_scale(t, -1)};
  const detail::CSeries theta2 = detail::c_mul(theta, theta);
  // sin(theta)/theta = sum_k (-1)^k theta^{2k}/(2k+1)!
  detail::CSeries sinc{RatSeries::constant(D, 1), RatSeries(D)};
  detail::CSeries pw = sinc;
  mpz_class fact = 1;
  for (std::size_t k = 1; 2 * k <= D; ++k) {
    pw = detail::c_mul(pw, theta2);
    fact *= static_cast<unsigned long>((2 * k) * (2 * k + 1));
    mpq_class f(k % 2 ? -1 : 1);
    f /= fact;
    sinc.re = s_add(sinc.re, s_scale(pw.re, f));
    sinc.im = s_add(sinc.im, s_scale(pw.im, f));
  }
  const detail::CSeries one{RatSeries::constant(D, 1), RatSeries(D)};
  const detail::CSeries ratio = detail::c_div(one, sinc);

  RatSeries sum(D);
  for (std::size_t n = 1; n < S.size() && n <= D; ++n) sum = s_add(sum, RatSeries::monomial(D, n, S[n]));
  const RatSeries e = s_compose(s_exp(sum), t);
  const detail::CSeries out = detail::c_mul(ratio, detail::CSeries{e, RatSeries(D)});
  for (std::size_t n = 0; n <= D; ++n)
    if (out.im[n] != 0) fail(errc::imaginary_residue, "imaginary part at degree " + std::to_string(n));
  return out.re;
}

// Inverse of lambda_from_S: returns S_0..S_D with S_0 = 0.
inline std::vector<mpq_class> S_from_lambda(const RatSeries& lambda, std::size_t D) {
  if (lambda[0] != 1) fail(errc::bad_normalization, "lambda_0 = " + lambda[0].get_str());
  const std::size_t cap = std::min(D, lambda.cap());
  const RatSeries L = s_log(lambda.truncated(cap));
  // x = e^{2t} - 1
  RatSeries two_t = RatSeries::monomial(cap, 1, 2);
  RatSeries g = s_exp(two_t);
  g[0] = 0;
  RatSeries Lt = s_compose(L, g);
  // log(t / sinh t) = -log(sinh t / t)
  RatSeries sh(cap);
  mpz_class fact = 1;
  for (std::size_t k = 0; 2 * k <= cap; ++k) {
    if (k) fact *= static_cast<unsigned long>((2 * k) * (2 * k + 1));
    sh[2 * k] = mpq_class(1) / mpq_class(fact);
  }
  RatSeries corr = s_scale(s_log(sh), -1);
  RatSeries Sser = s_sub(Lt, corr);
  std::vector<mpq_class> S(cap + 1);
  for (std::size_t n = 1; n <= cap; ++n) S[n] = Sser[n];
  return S;
}

}  // namespace qinv
