#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "arith.hpp"

namespace qinv {

// Element of Z_K[x] / x^{(K+1)/2}: the common target of diamond and vee.
class TruncPoly {
 public:
  explicit TruncPoly(const PrimeK& K) : K_(K.K()), c_(static_cast<std::size_t>((K.K() + 1) / 2), 0) {}
  TruncPoly(const PrimeK& K, const std::vector<i64>& coeffs) : TruncPoly(K) {
    for (std::size_t i = 0; i < c_.size() && i < coeffs.size(); ++i) c_[i] = floor_mod(coeffs[i], K_);
  }

  static TruncPoly constant(const PrimeK& K, i64 v) { return TruncPoly(K, {v}); }

  i64 modulus() const { return K_; }
  std::size_t size() const { return c_.size(); }
  i64 operator[](std::size_t i) const { return c_[i]; }
  i64& operator[](std::size_t i) { return c_[i]; }
  const std::vector<i64>& coeffs() const { return c_; }

  TruncPoly& operator+=(const TruncPoly& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = (c_[i] + o.c_[i]) % K_;
    return *this;
  }
  TruncPoly& operator-=(const TruncPoly& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = floor_mod(c_[i] - o.c_[i], K_);
    return *this;
  }
  TruncPoly& operator*=(i64 s) {
    s = floor_mod(s, K_);
    for (auto& v : c_) v = v * s % K_;
    return *this;
  }
  friend TruncPoly operator+(TruncPoly a, const TruncPoly& b) { return a += b; }
  friend TruncPoly operator-(TruncPoly a, const TruncPoly& b) { return a -= b; }
  friend TruncPoly operator*(TruncPoly a, i64 s) { return a *= s; }
  friend TruncPoly operator*(const TruncPoly& a, const TruncPoly& b) {
    a.check(b);
    TruncPoly r = a;
    std::fill(r.c_.begin(), r.c_.end(), 0);
    const std::size_t n = a.c_.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (!a.c_[i]) continue;
      for (std::size_t j = 0; i + j < n; ++j) r.c_[i + j] = (r.c_[i + j] + a.c_[i] * b.c_[j]) % a.K_;
    }
    return r;
  }
  friend bool operator==(const TruncPoly& a, const TruncPoly& b) { return a.K_ == b.K_ && a.c_ == b.c_; }
  friend bool operator!=(const TruncPoly& a, const TruncPoly& b) { return !(a == b); }

  // First degree where the two disagree, or -1.
  int first_mismatch(const TruncPoly& o) const {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != o.c_[i]) return static_cast<int>(i);
    return -1;
  }

  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i];
    os << "]";
    return os.str();
  }

 private:
  void check(const TruncPoly& o) const {
    if (o.K_ != K_) fail(errc::mixed_modulus, "truncated polynomials mod different K");
  }

  i64 K_;
  std::vector<i64> c_;
};

}  // namespace qinv
