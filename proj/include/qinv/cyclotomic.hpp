#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "arith.hpp"
#include "truncpoly.hpp"

namespace qinv {

// Element of Z[q], q = exp(2 pi i/K), stored in the basis 1, q, ..., q^{K-2}.
class CycInt {
 public:
  explicit CycInt(const PrimeK& K) : K_(K.K()), c_(static_cast<std::size_t>(K.K() - 1)) {}

  static CycInt zero(const PrimeK& K) { return CycInt(K); }
  static CycInt constant(const PrimeK& K, const mpz_class& v) {
    CycInt r(K);
    r.c_[0] = v;
    return r;
  }
  static CycInt one(const PrimeK& K) { return constant(K, 1); }
  static CycInt qpow(i64 e, const PrimeK& K) {
    std::vector<mpz_class> full(static_cast<std::size_t>(K.K()));
    full[static_cast<std::size_t>(K.red(e))] = 1;
    return from_full(K, full);
  }

  // Length-K coefficient vector (q^0..q^{K-1}), reduced with 1 + q + ... + q^{K-1} = 0.
  static CycInt from_full(const PrimeK& K, const std::vector<mpz_class>& full) {
    CycInt r(K);
    const mpz_class& top = full[static_cast<std::size_t>(K.K() - 1)];
    for (std::size_t j = 0; j + 1 < full.size(); ++j) r.c_[j] = full[j] - top;
    return r;
  }
  static CycInt from_counts(const PrimeK& K, const std::vector<i64>& full) {
    CycInt r(K);
    const i64 top = full[static_cast<std::size_t>(K.K() - 1)];
    for (std::size_t j = 0; j + 1 < full.size(); ++j) r.c_[j] = static_cast<long>(full[j] - top);
    return r;
  }
  static CycInt from_coeffs(const PrimeK& K, const std::vector<mpz_class>& c) {
    std::vector<mpz_class> full(static_cast<std::size_t>(K.K()));
    for (std::size_t j = 0; j < c.size(); ++j) full[j % full.size()] += c[j];
    return from_full(K, full);
  }

  i64 modulus() const { return K_; }
  PrimeK prime() const { return PrimeK(K_); }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  const mpz_class& operator[](std::size_t i) const { return c_[i]; }

  bool is_zero() const {
    for (const auto& v : c_)
      if (v != 0) return false;
    return true;
  }

  CycInt& operator+=(const CycInt& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  CycInt& operator-=(const CycInt& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  CycInt& operator*=(const mpz_class& s) {
    for (auto& v : c_) v *= s;
    return *this;
  }
  CycInt operator-() const {
    CycInt r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
  friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }
  friend CycInt operator*(CycInt a, const mpz_class& s) { return a *= s; }
  friend CycInt operator*(const mpz_class& s, CycInt a) { return a *= s; }
  friend CycInt operator*(CycInt a, long s) { return a *= mpz_class(s); }
  friend CycInt operator*(long s, CycInt a) { return a *= mpz_class(s); }

  friend CycInt operator*(const CycInt& a, const CycInt& b) {
    a.check(b);
    const std::size_t K = static_cast<std::size_t>(a.K_);
    std::vector<mpz_class> full(K);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        if (b.c_[j] == 0) continue;
        std::size_t e = i + j;
        if (e >= K) e -= K;
        mpz_addmul(full[e].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
      }
    }
    return from_full(PrimeK(a.K_), full);
  }
  CycInt& operator*=(const CycInt& o) { return *this = *this * o; }

  friend bool operator==(const CycInt& a, const CycInt& b) { return a.K_ == b.K_ && a.c_ == b.c_; }
  friend bool operator!=(const CycInt& a, const CycInt& b) { return !(a == b); }

  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i].get_str();
    os << "]";
    return os.str();
  }

 private:
  void check(const CycInt& o) const {
    if (o.K_ != K_) fail(errc::mixed_modulus, "cyclotomic integers at K=" + std::to_string(K_) + " and " + std::to_string(o.K_));
  }

  i64 K_;
  std::vector<mpz_class> c_;
};

inline CycInt pow(CycInt a, unsigned n) {
  CycInt r = CycInt::one(a.prime());
  while (n) {
    if (n & 1) r *= a;
    n >>= 1;
    if (n) a *= a;
  }
  return r;
}

// Exact division by an integer; throws when some coefficient is not divisible.
inline CycInt divide_exact(const CycInt& a, const mpz_class& d, errc on_fail = errc::integrality_failure) {
  std::vector<mpz_class> c = a.coeffs();
  for (auto& v : c) {
    if (!mpz_divisible_p(v.get_mpz_t(), d.get_mpz_t())) fail(on_fail, "coefficient " + v.get_str() + " not divisible by " + d.get_str());
    mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), d.get_mpz_t());
  }
  return CycInt::from_coeffs(a.prime(), c);
}

// Coordinates in the basis 1, x, ..., x^{K-2} with x = q - 1.
class XPoly {
 public:
  XPoly(const PrimeK& K, std::vector<mpz_class> c) : K_(K.K()), c_(std::move(c)) { c_.resize(static_cast<std::size_t>(K_ - 1)); }
  i64 modulus() const { return K_; }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  const mpz_class& operator[](std::size_t i) const { return c_[i]; }
  friend bool operator==(const XPoly& a, const XPoly& b) { return a.K_ == b.K_ && a.c_ == b.c_; }

 private:
  i64 K_;
  std::vector<mpz_class> c_;
};

inline XPoly to_xpoly(const CycInt& a) {
  const std::size_t n = a.coeffs().size();
  std::vector<mpz_class> r(n);
  std::vector<mpz_class> row{1};  // binomials C(j, i), i = 0..j
  for (std::size_t j = 0; j < n; ++j) {
    if (j > 0) {
      row.push_back(1);
      for (std::size_t i = j - 1; i >= 1; --i) row[i] += row[i - 1];
    }
    if (a[j] == 0) continue;
    for (std::size_t i = 0; i <= j; ++i) mpz_addmul(r[i].get_mpz_t(), a[j].get_mpz_t(), row[i].get_mpz_t());
  }
  return XPoly(a.prime(), std::move(r));
}

inline CycInt from_xpoly(const XPoly& p) {
  const PrimeK K(p.modulus());
  const std::size_t n = p.coeffs().size();
  std::vector<mpz_class> c(n);
  std::vector<mpz_class> row{1};
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) {
      row.push_back(1);
      for (std::size_t j = i - 1; j >= 1; --j) row[j] += row[j - 1];
    }
    if (p[i] == 0) continue;
    // (q - 1)^i = sum_j C(i, j) (-1)^{i-j} q^j
    for (std::size_t j = 0; j <= i; ++j) {
      if ((i - j) % 2 == 0)
        mpz_addmul(c[j].get_mpz_t(), p[i].get_mpz_t(), row[j].get_mpz_t());
      else
        mpz_submul(c[j].get_mpz_t(), p[i].get_mpz_t(), row[j].get_mpz_t());
    }
  }
  return CycInt::from_coeffs(K, c);
}

// Largest n <= K-1 such that every x-coefficient below degree n is divisible by K.
inline i64 x_order(const CycInt& a) {
  const XPoly p = to_xpoly(a);
  const i64 K = a.modulus();
  for (std::size_t i = 0; i < p.coeffs().size(); ++i)
    if (floor_mod(p[i], K) != 0) return static_cast<i64>(i);
  return K - 1;
}

inline TruncPoly diamond(const CycInt& a) {
  const PrimeK K = a.prime();
  const i64 m = K.K();
  const std::size_t n = a.coeffs().size();
  const std::size_t top = static_cast<std::size_t>((m + 1) / 2);
  std::vector<i64> r(top, 0);
  std::vector<i64> row{1};
  for (std::size_t j = 0; j < n; ++j) {
    if (j > 0) {
      row.push_back(1);
      for (std::size_t i = j - 1; i >= 1; --i) row[i] = (row[i] + row[i - 1]) % m;
    }
    const i64 cj = K.red(a[j]);
    if (!cj) continue;
    for (std::size_t i = 0; i <= j && i < top; ++i) r[i] = (r[i] + cj * row[i]) % m;
  }
  return TruncPoly(K, r);
}

inline CycInt gauss_sum(i64 c, const PrimeK& K) {
  std::vector<i64> full(static_cast<std::size_t>(K.K()), 0);
  for (i64 a = 0; a < K.K(); ++a) ++full[static_cast<std::size_t>(K.red(K.red(c) * (a * a % K.K())))];
  return CycInt::from_counts(K, full);
}

enum class OddRange {
  full_period,  // one full period of odd residues mod 2K; the boundary colors +-K enter with weight 1/2 each
  open_range,   // odd alpha strictly inside (-K, K)
};

inline std::vector<i64> odd_colors(i64 K, OddRange range = OddRange::full_period) {
  std::vector<i64> v;
  for (i64 a = -K + 2; a <= K - 2; a += 2) v.push_back(a);
  if (range == OddRange::full_period) v.push_back(K);
  return v;
}

inline CycInt odd_gauss_moment(i64 p, unsigned m, const PrimeK& K, OddRange range = OddRange::full_period) {
  std::vector<mpz_class> full(static_cast<std::size_t>(K.K()));
  const i64 pr = K.red(p);
  mpz_class w;
  for (i64 a : odd_colors(K.K(), range)) {
    mpz_ui_pow_ui(w.get_mpz_t(), static_cast<unsigned long>(a < 0 ? -a : a), 2 * m);
    full[static_cast<std::size_t>(K.red(pr * K.red(a * a)))] += w;
  }
  return CycInt::from_full(K, full);
}

// x^n = (q - 1)^n
inline CycInt xpow(unsigned n, const PrimeK& K) {
  return pow(CycInt::qpow(1, K) - CycInt::one(K), n);
}

// sum over odd a in one full period mod 2K of q^{c a^2 + 2 n a}
inline CycInt completed_square_lhs(i64 c, i64 n, const PrimeK& K) {
  std::vector<i64> full(static_cast<std::size_t>(K.K()), 0);
  for (i64 a : odd_colors(K.K())) ++full[static_cast<std::size_t>(K.red(c * K.red(a * a) + 2 * n * a))];
  return CycInt::from_counts(K, full);
}

// legendre(c) q^{-c^* n^2} G(1), the same sum without any square root of K
inline CycInt completed_square_rhs(i64 c, i64 n, const PrimeK& K) {
  const i64 cs = inv_mod(c, K.K());
  CycInt r = CycInt::qpow(-cs * K.red(n * n), K) * gauss_sum(1, K);
  return legendre(c, K) < 0 ? -r : r;
}

// sum' q^{p q^* a^2} a^{2m} x^m G(1) / (kappa K), an element of Z[q] for m >= 0
inline CycInt normalized_gauss_moment(i64 p, i64 q, unsigned m, const PrimeK& K) {
  const CycInt S = odd_gauss_moment(K.red(p * inv_mod(q, K.K())), m, K);
  return divide_exact(S * xpow(m, K) * gauss_sum(1, K), K.kappa() * K.K());
}

// w = exp(i pi/K) = -q^{(K+1)/2}; w^b stays inside Z[q].
inline CycInt wpow(i64 b, const PrimeK& K) {
  CycInt r = CycInt::qpow(b * ((K.K() + 1) / 2), K);
  return floor_mod(b, 2) ? -r : r;
}

// sin(pi a/K)/sin(pi/K) = (w^a - w^{-a})/(w - w^{-1}) for any integer a.
inline CycInt sin_ratio(i64 a, const PrimeK& K) {
  if (a == 0) return CycInt::zero(K);
  if (a < 0) return -sin_ratio(-a, K);
  std::vector<mpz_class> full(static_cast<std::size_t>(K.K()));
  for (i64 i = 0; i < a; ++i) {
    const i64 b = a - 1 - 2 * i;
    const i64 e = K.red(b * ((K.K() + 1) / 2));
    if (floor_mod(b, 2))
      full[static_cast<std::size_t>(e)] -= 1;
    else
      full[static_cast<std::size_t>(e)] += 1;
  }
  return CycInt::from_full(K, full);
}

// (z^{-a} - z^a)/(z^{-1} - z) with z = q^{2^*}; depends on a only mod K.
inline CycInt zratio(i64 a, const PrimeK& K) {
  const i64 r = K.red(a);
  std::vector<i64> full(static_cast<std::size_t>(K.K()), 0);
  for (i64 i = 0; i < r; ++i) ++full[static_cast<std::size_t>(K.red(K.inv2() * (2 * i - (r - 1))))];
  return CycInt::from_counts(K, full);
}

namespace detail {

using QPoly = std::vector<mpq_class>;

inline void trim(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline QPoly qmul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

inline QPoly qsub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

inline void qdivmod(QPoly a, const QPoly& b, QPoly& quo, QPoly& rem) {
  trim(a);
  quo.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  while (a.size() >= b.size() && !a.empty()) {
    const std::size_t shift = a.size() - b.size();
    const mpq_class f = a.back() / b.back();
    quo[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    trim(a);
  }
  trim(quo);
  rem = a;
}

// Inverse of a modulo the K-th cyclotomic polynomial over Q.
inline QPoly field_inverse(const CycInt& a) {
  const i64 K = a.modulus();
  QPoly phi(static_cast<std::size_t>(K), mpq_class(1));
  QPoly r0 = phi, r1;
  for (const auto& v : a.coeffs()) r1.push_back(mpq_class(v));
  trim(r1);
  if (r1.empty()) fail(errc::not_a_unit, "zero is not invertible");
  QPoly s0, s1{mpq_class(1)};
  while (r1.size() > 1) {
    QPoly q, r;
    qdivmod(r0, r1, q, r);
    QPoly s = qsub(s0, qmul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
    if (r1.empty()) fail(errc::not_a_unit, "shares a factor with the cyclotomic polynomial");
  }
  const mpq_class c = r1[0];
  for (auto& v : s1) v /= c;
  QPoly q, rem;
  qdivmod(s1, phi, q, rem);
  return rem;
}

inline CycInt integral_or_throw(const QPoly& p, const PrimeK& K, errc code) {
  std::vector<mpz_class> c;
  for (const auto& v : p) {
    if (v.get_den() != 1) fail(code, "non-integer coefficient " + v.get_str());
    c.push_back(v.get_num());
  }
  return CycInt::from_coeffs(K, c);
}

inline QPoly to_qpoly(const CycInt& a) {
  QPoly r;
  for (const auto& v : a.coeffs()) r.push_back(mpq_class(v));
  trim(r);
  return r;
}

inline QPoly reduce_phi(const QPoly& a, i64 K) {
  QPoly phi(static_cast<std::size_t>(K), mpq_class(1)), q, r;
  qdivmod(a, phi, q, r);
  return r;
}

}  // namespace detail

inline CycInt invert_unit(const CycInt& a) {
  const PrimeK K = a.prime();
  CycInt b = detail::integral_or_throw(detail::field_inverse(a), K, errc::not_a_unit);
  if (a * b != CycInt::one(K)) fail(errc::not_a_unit, "inverse check failed");
  return b;
}

// The unit u with gauss_sum(1) = x^{(K-1)/2} u^{-1}.
inline CycInt unit_u(const PrimeK& K) {
  const auto ginv = detail::field_inverse(gauss_sum(1, K));
  const auto xh = detail::to_qpoly(xpow(static_cast<unsigned>(K.half()), K));
  CycInt u = detail::integral_or_throw(detail::reduce_phi(detail::qmul(xh, ginv), K.K()), K, errc::integrality_failure);
  if (u * gauss_sum(1, K) != xpow(static_cast<unsigned>(K.half()), K)) fail(errc::integrality_failure, "unit u check failed");
  return u;
}

template <class Real = double>
std::complex<Real> eval_complex(const CycInt& a) {
  const Real two_pi = 2 * std::numbers::pi_v<Real>;
  const Real K = static_cast<Real>(a.modulus());
  std::complex<Real> s{0, 0};
  for (std::size_t j = 0; j < a.coeffs().size(); ++j) {
    if (a[j] == 0) continue;
    const Real v = static_cast<Real>(a[j].get_d());
    const Real t = two_pi * static_cast<Real>(j) / K;
    s += std::complex<Real>(v * std::cos(t), v * std::sin(t));
  }
  return s;
}

}  // namespace qinv
