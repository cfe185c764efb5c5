#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "arith.hpp"
#include "manifold.hpp"

namespace qinv {

// [[p, r], [q, s]] with ps - qr = 1.
struct SL2 {
  i64 p, r, q, s;

  SL2(i64 p_, i64 r_, i64 q_, i64 s_) : p(p_), r(r_), q(q_), s(s_) {
    if (p * s - q * r != 1) fail(errc::bad_spec, "matrix is not in SL(2,Z)");
  }
  static SL2 T(i64 m) { return {1, m, 0, 1}; }
  static SL2 S() { return {0, -1, 1, 0}; }
  static SL2 TS(i64 m) { return {m, -1, 1, 0}; }

  friend SL2 operator*(const SL2& a, const SL2& b) {
    return {a.p * b.p + a.r * b.q, a.p * b.r + a.r * b.s, a.q * b.p + a.s * b.q, a.q * b.r + a.s * b.s};
  }
  friend bool operator==(const SL2& a, const SL2& b) { return a.p == b.p && a.r == b.r && a.q == b.q && a.s == b.s; }
};

// Chain of unknots with framings m_1..m_t; the surgery matrix is T^{m_t}S ... T^{m_1}S.
struct Chain {
  std::vector<i64> m;

  // Partial products U_t = T^{m_t}S ... T^{m_1}S, t = 1..size.
  std::vector<SL2> partials() const {
    std::vector<SL2> out;
    SL2 U{1, 0, 0, 1};
    for (i64 mi : m) {
      U = SL2::TS(mi) * U;
      out.push_back(U);
    }
    return out;
  }
  SL2 matrix() const { return m.empty() ? SL2{1, 0, 0, 1} : partials().back(); }
};

namespace detail {

// Sawtooth ((n/d)) for d > 0.
inline mpq_class sawtooth(i64 n, i64 d) {
  const i64 r = floor_mod(n, d);
  if (r == 0) return 0;
  return rat(r, d) - rat(1, 2);
}

}  // namespace detail

// s(q, p) = sign(p) * sum_{i=1}^{|p|-1} ((i/|p|)) ((q i/|p|)).
// The sign(p) factor extends the sum to negative moduli so that the
// Rademacher function stays integral and the SL(2) identities hold.
inline mpq_class dedekind_sum(i64 q, i64 p) {
  if (p == 0) fail(errc::zero_lower_left, "Dedekind sum with p = 0");
  if (gcd(q, p) != 1) fail(errc::not_coprime, "s(" + std::to_string(q) + "," + std::to_string(p) + ")");
  const i64 ap = p < 0 ? -p : p;
  mpq_class s = 0;
  for (i64 i = 1; i < ap; ++i) s += detail::sawtooth(i, ap) * detail::sawtooth(q * i, ap);
  return p < 0 ? mpq_class(-s) : s;
}

inline Residue dedekind_vee(i64 q, i64 p, const PrimeK& K) { return rat_check(dedekind_sum(q, p), K); }

inline i64 rademacher_phi(const SL2& U) {
  if (U.q == 0) fail(errc::zero_lower_left, "Phi needs q != 0");
  mpq_class v = rat(U.p + U.s, U.q) - 12 * dedekind_sum(U.p, U.q);
  v.canonicalize();
  if (v.get_den() != 1) fail(errc::non_integer_phi, "Phi = " + v.get_str());
  return v.get_num().get_si();
}

// Greedy ceiling expansion p/q = m_t - 1/(m_{t-1} - 1/(... - 1/m_1)).
inline Chain cf_expand(i64 p, i64 q) {
  if (q < 1) fail(errc::bad_spec, "cf_expand needs q >= 1");
  if (gcd(p, q) != 1) fail(errc::not_coprime, "cf_expand(" + std::to_string(p) + "," + std::to_string(q) + ")");
  std::vector<i64> rev;
  i64 a = p, b = q;
  while (b != 0) {
    const i64 m = ceil_div(a, b);
    rev.push_back(m);
    const i64 nb = m * b - a;
    a = b;
    b = nb;
  }
  Chain c{std::vector<i64>(rev.rbegin(), rev.rend())};
  const SL2 U = c.matrix();
  if (U.p != p || U.q != q) fail(errc::integrality_failure, "chain product does not reproduce (p,q)");
  return c;
}

inline bool phi_chain_check(const Chain& c) {
  const auto parts = c.partials();
  i64 msum = 0, ssum = 0;
  for (i64 m : c.m) msum += m;
  for (std::size_t t = 0; t + 1 < parts.size(); ++t) {
    if (parts[t].q == 0) fail(errc::zero_lower_left, "degenerate intermediate in chain");
    ssum += sign(parts[t].p) * sign(parts[t].q);
  }
  return rademacher_phi(c.matrix()) == msum - 3 * ssum;
}

inline i64 signature_correction(const std::vector<Chain>& chains, i64 L_sign) {
  i64 s = L_sign;
  for (const auto& c : chains) {
    const auto parts = c.partials();
    for (std::size_t t = 0; t + 1 < parts.size(); ++t) {
      if (parts[t].q == 0) fail(errc::zero_lower_left, "degenerate intermediate in chain");
      s += sign(parts[t].p) * sign(parts[t].q);
    }
  }
  return s;
}

// Signature of a symmetric rational matrix by exact congruence diagonalization.
inline i64 signature(std::vector<std::vector<mpq_class>> A) {
  const std::size_t n = A.size();
  i64 sig = 0;
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i] && A[i][i] != 0) { piv = i; break; }
    if (piv == n) {
      // all remaining diagonal entries vanish: use row_i += row_j on a nonzero off-diagonal entry
      std::size_t bi = n, bj = n;
      for (std::size_t i = 0; i < n && bi == n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!done[i] && !done[j] && i != j && A[i][j] != 0) { bi = i; bj = j; break; }
      if (bi == n) break;
      for (std::size_t k = 0; k < n; ++k) A[bi][k] += A[bj][k];
      for (std::size_t k = 0; k < n; ++k) A[k][bi] += A[k][bj];
      piv = bi;
    }
    const mpq_class d = A[piv][piv];
    sig += sgn(d);
    done[piv] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || A[i][piv] == 0) continue;
      const mpq_class f = A[i][piv] / d;
      for (std::size_t k = 0; k < n; ++k) A[i][k] -= f * A[piv][k];
      for (std::size_t k = 0; k < n; ++k) A[k][i] -= f * A[k][piv];
    }
  }
  return sig;
}

inline mpz_class h1_order(const ManifoldSpec& M) {
  if (auto* l = std::get_if<Lens>(&M.v)) {
    if (l->p == 0) fail(errc::not_rhs, "lens space with p = 0");
    return mpz_class(l->p < 0 ? -l->p : l->p);
  }
  if (auto* s = std::get_if<Seifert>(&M.v)) {
    mpz_class H = s->data.H();
    if (H == 0) fail(errc::not_rhs, "Seifert manifold with H = 0");
    return abs(H);
  }
  const auto& p = std::get<P1Surgery>(M.v);
  mpz_class h = 1;
  for (i64 f : p.framings) h *= f;
  if (h == 0) fail(errc::not_rhs, "zero framing");
  return abs(h);
}

}  // namespace qinv
