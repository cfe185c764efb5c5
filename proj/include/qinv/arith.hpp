#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "error.hpp"

namespace qinv {

using i64 = std::int64_t;

inline int sign(i64 v) { return (v > 0) - (v < 0); }
inline int sign(const mpz_class& v) { return sgn(v); }
inline int sign(const mpq_class& v) { return sgn(v); }

inline i64 floor_mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

inline i64 floor_mod(const mpz_class& a, i64 m) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(m));
  return r.get_si();
}

// ceil(a/b) for b > 0
inline i64 ceil_div(i64 a, i64 b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

inline i64 gcd(i64 a, i64 b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline i64 pow_mod(i64 b, i64 e, i64 m) {
  i64 r = 1 % m;
  b = floor_mod(b, m);
  while (e > 0) {
    if (e & 1) r = static_cast<i64>((__int128)r * b % m);
    b = static_cast<i64>((__int128)b * b % m);
    e >>= 1;
  }
  return r;
}

// Odd prime level. kappa is (-1)^{(K-1)/2}: the sign of the squared Gauss sum,
// which is the convention the phase identities need (4*4^* = 1 - kappa*K).
class PrimeK {
 public:
  explicit PrimeK(i64 K) : K_(K) {
    if (K < 3 || K % 2 == 0 || !is_prime(K))
      fail(errc::not_prime, "K=" + std::to_string(K) + " is not an odd prime");
    kappa_ = (K % 4 == 1) ? 1 : -1;
    inv2_ = (K + 1) / 2;
    inv4_ = floor_mod((1 - kappa_ * K) / 4, K);
  }

  i64 K() const { return K_; }
  i64 k() const { return K_ - 2; }
  int kappa() const { return kappa_; }
  i64 inv2() const { return inv2_; }
  i64 inv4() const { return inv4_; }
  i64 half() const { return (K_ - 1) / 2; }

  i64 red(i64 a) const { return floor_mod(a, K_); }
  i64 red(const mpz_class& a) const { return floor_mod(a, K_); }

  friend bool operator==(const PrimeK& a, const PrimeK& b) { return a.K_ == b.K_; }

 private:
  i64 K_;
  int kappa_;
  i64 inv2_, inv4_;
};

class Residue {
 public:
  Residue(i64 v, const PrimeK& K) : value_(K.red(v)), K_(K.K()) {}
  Residue(const mpz_class& v, const PrimeK& K) : value_(K.red(v)), K_(K.K()) {}

  i64 value() const { return value_; }
  i64 modulus() const { return K_; }

  Residue& operator+=(const Residue& o) { check(o); value_ = (value_ + o.value_) % K_; return *this; }
  Residue& operator-=(const Residue& o) { check(o); value_ = floor_mod(value_ - o.value_, K_); return *this; }
  Residue& operator*=(const Residue& o) { check(o); value_ = value_ * o.value_ % K_; return *this; }
  friend Residue operator+(Residue a, const Residue& b) { return a += b; }
  friend Residue operator-(Residue a, const Residue& b) { return a -= b; }
  friend Residue operator*(Residue a, const Residue& b) { return a *= b; }
  friend bool operator==(const Residue& a, const Residue& b) { return a.value_ == b.value_ && a.K_ == b.K_; }

 private:
  Residue(i64 v, i64 K, int) : value_(v), K_(K) {}
  void check(const Residue& o) const {
    if (o.K_ != K_) fail(errc::mixed_modulus, "residues mod " + std::to_string(K_) + " and " + std::to_string(o.K_));
  }
  friend Residue mod_inv(const Residue& a);

  i64 value_;
  i64 K_;
};

inline i64 inv_mod(i64 a, i64 K) {
  a = floor_mod(a, K);
  if (a == 0) fail(errc::zero_inverse, "0 has no inverse mod " + std::to_string(K));
  i64 r0 = K, r1 = a, s0 = 0, s1 = 1;
  while (r1) {
    i64 q = r0 / r1;
    i64 t = r0 - q * r1; r0 = r1; r1 = t;
    t = s0 - q * s1; s0 = s1; s1 = t;
  }
  return floor_mod(s0, K);
}

inline i64 inv_mod(const mpz_class& a, i64 K) { return inv_mod(floor_mod(a, K), K); }

inline Residue mod_inv(const Residue& a) { return Residue(inv_mod(a.value_, a.K_), a.K_, 0); }

// The even representative of a^{-1} in (-K, K); keeps color parity under shifts.
inline i64 even_inv(const Residue& a) {
  i64 b = mod_inv(a).value();
  return (b % 2 == 0) ? b : b - a.modulus();
}

inline int legendre(i64 a, const PrimeK& K) {
  i64 r = K.red(a);
  if (r == 0) return 0;
  return pow_mod(r, (K.K() - 1) / 2, K.K()) == 1 ? 1 : -1;
}

inline int legendre(const mpz_class& a, const PrimeK& K) { return legendre(K.red(a), K); }

inline Residue rat_check(const mpz_class& num, const mpz_class& den, const PrimeK& K) {
  if (den == 0 || K.red(den) == 0)
    fail(errc::denominator_divisible_by_k, "denominator " + den.get_str() + " mod K=" + std::to_string(K.K()));
  return Residue(K.red(num) * inv_mod(den, K.K()), K);
}

inline Residue rat_check(const mpq_class& r, const PrimeK& K) {
  return rat_check(r.get_num(), r.get_den(), K);
}

inline int kappa_of(const PrimeK& K) { return K.kappa(); }

// n/d in lowest terms with positive denominator
inline mpq_class rat(const mpz_class& n, const mpz_class& d) {
  if (d == 0) fail(errc::zero_inverse, "zero denominator");
  mpq_class r(n, d);
  r.canonicalize();
  return r;
}

inline std::string to_string(const mpq_class& q) { return q.get_str(); }

}  // namespace qinv
