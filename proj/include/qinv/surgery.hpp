#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "arith.hpp"
#include "cyclotomic.hpp"
#include "jones.hpp"
#include "manifold.hpp"
#include "nt.hpp"

namespace qinv {

// Phase e^{i pi a/4} * e^{i pi b/K} * sign. Collapses into Z[q] when a = 0 mod 4,
// since e^{i pi b/K} = w^b with w = -q^{(K+1)/2}.
struct ExtendedPhase {
  i64 K;
  i64 a = 0;
  i64 b = 0;
  int sgn = 1;

  explicit ExtendedPhase(i64 K_) : K(K_) {}

  ExtendedPhase& eighth(i64 n) { a = floor_mod(a + n, 8); return *this; }
  ExtendedPhase& root2k(i64 n) { b = floor_mod(b + n, 2 * K); return *this; }
  ExtendedPhase& qpow(i64 n) { return root2k(2 * n); }
  ExtendedPhase& flip(int s) { sgn *= s; return *this; }

  bool reducible() const { return a % 4 == 0; }

  CycInt reduce(const PrimeK& P) const {
    if (!reducible()) fail(errc::phase_not_reducible, "e^{i pi " + std::to_string(a) + "/4} left over");
    CycInt r = wpow(b, P);
    const int s = sgn * (a == 4 ? -1 : 1);
    return s < 0 ? -r : r;
  }

  template <class Real = double>
  std::complex<Real> value() const {
    const Real pi = std::numbers::pi_v<Real>;
    const Real t = pi * static_cast<Real>(a) / 4 + pi * static_cast<Real>(b) / static_cast<Real>(K);
    return static_cast<Real>(sgn) * std::complex<Real>(std::cos(t), std::sin(t));
  }
};

// Integer-framed forest of unknots; each edge is a +1 linking (a Hopf clasp).
struct FramedTree {
  std::vector<i64> framings;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::vector<std::vector<mpq_class>> linking() const {
    const std::size_t V = framings.size();
    std::vector<std::vector<mpq_class>> L(V, std::vector<mpq_class>(V, 0));
    for (std::size_t v = 0; v < V; ++v) L[v][v] = framings[v];
    for (auto [a, b] : edges) L[a][b] = L[b][a] = 1;
    return L;
  }
};

inline void append_chain(FramedTree& t, const Chain& c, std::ptrdiff_t attach) {
  // c.m[0] is the far end; the last framing sits next to the attachment point
  std::ptrdiff_t prev = attach;
  for (auto it = c.m.rbegin(); it != c.m.rend(); ++it) {
    t.framings.push_back(*it);
    const std::size_t v = t.framings.size() - 1;
    if (prev >= 0) t.edges.emplace_back(static_cast<std::size_t>(prev), v);
    prev = static_cast<std::ptrdiff_t>(v);
  }
}

// Lens spaces: -p/q surgery on the unknot. Seifert: central 0-framed unknot with one chain per fiber.
inline FramedTree surgery_tree(const ManifoldSpec& M) {
  FramedTree t;
  if (auto* l = std::get_if<Lens>(&M.v)) {
    const i64 ap = l->p < 0 ? -l->p : l->p;
    if (ap == 1) return t;
    append_chain(t, cf_expand(-l->p, floor_mod(l->q, ap)), -1);
  } else if (auto* s = std::get_if<Seifert>(&M.v)) {
    t.framings.push_back(0);
    for (auto [p, q] : s->data.normalized().fractions) append_chain(t, cf_expand(p, q), 0);
  } else {
    const auto& ps = std::get<P1Surgery>(M.v);
    const JonesTable J = builtin_jones(ps.jones);
    if (J.arity != ps.framings.size()) fail(errc::bad_spec, "framing count does not match the link");
    if (J.id != "unknot" && J.id.rfind("unlink", 0) != 0 && J.id != "empty")
      fail(errc::unsupported, "no tree presentation for " + J.id);
    for (i64 f : ps.framings) t.framings.push_back(f);
  }
  return t;
}

namespace detail {

template <class Real>
struct CSum {
  std::complex<Real> s{0, 0}, c{0, 0};
  void add(std::complex<Real> v) {
    auto one = [](Real& sum, Real& comp, Real x) {
      const Real t = sum + x;
      comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
      sum = t;
    };
    Real sr = s.real(), si = s.imag(), cr = c.real(), ci = c.imag();
    one(sr, cr, v.real());
    one(si, ci, v.imag());
    s = {sr, si};
    c = {cr, ci};
  }
  std::complex<Real> get() const { return s + c; }
};

template <class Real>
std::complex<Real> cis(Real t) { return {std::cos(t), std::sin(t)}; }

// q^{n} for integer n, computed from n mod K for accuracy
template <class Real>
std::complex<Real> qc(i64 n, i64 K) {
  return cis(2 * std::numbers::pi_v<Real> * static_cast<Real>(floor_mod(n, K)) / static_cast<Real>(K));
}

// Sum over colors of the Hopf-chain Jones data times twists and sin factors, by message passing.
template <class Real>
std::complex<Real> tree_sum(i64 K, const FramedTree& t, bool odd) {
  using C = std::complex<Real>;
  const Real pi = std::numbers::pi_v<Real>;
  const Real Kr = static_cast<Real>(K);
  std::vector<i64> cols;
  if (odd) {
    for (i64 a = -K + 1; a < K; ++a)
      if (floor_mod(a, 2) == 1) cols.push_back(a);
  } else {
    for (i64 a = 1; a < K; ++a) cols.push_back(a);
  }
  const std::size_t n = cols.size(), V = t.framings.size();
  if (V == 0) return C(1, 0);
  const Real s1 = std::sin(pi / Kr);
  std::vector<Real> br(n), sn(n);
  for (std::size_t i = 0; i < n; ++i) {
    sn[i] = std::sin(pi * static_cast<Real>(cols[i]) / Kr);
    br[i] = sn[i] / s1;
  }
  std::vector<Real> E(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) E[i * n + j] = std::sin(pi * static_cast<Real>(floor_mod(cols[i] * cols[j], 2 * K)) / Kr) / s1;
  std::vector<std::vector<std::size_t>> adj(V);
  for (auto [a, b] : t.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  auto weight = [&](std::size_t v) {
    std::vector<C> w(n);
    const int d = static_cast<int>(adj[v].size());
    for (std::size_t i = 0; i < n; ++i) {
      const i64 a = cols[i];
      // exp(i pi f (a^2 - 1)/(2K)) = exp(2 pi i f (a^2-1) / (4K)); reduce mod 4K
      const i64 e = floor_mod(floor_mod(t.framings[v], 4 * K) * floor_mod(a * a - 1, 4 * K), 4 * K);
      w[i] = cis(pi * static_cast<Real>(e) / (2 * Kr)) * std::pow(br[i], static_cast<Real>(1 - d)) * sn[i];
    }
    return w;
  };
  std::vector<bool> seen(V, false);
  std::function<std::vector<C>(std::size_t, std::ptrdiff_t)> msg = [&](std::size_t v, std::ptrdiff_t parent) {
    seen[v] = true;
    std::vector<C> vec = weight(v);
    for (std::size_t c : adj[v]) {
      if (static_cast<std::ptrdiff_t>(c) == parent) continue;
      const std::vector<C> m = msg(c, static_cast<std::ptrdiff_t>(v));
      for (std::size_t i = 0; i < n; ++i) {
        CSum<Real> acc;
        for (std::size_t j = 0; j < n; ++j) acc.add(E[i * n + j] * m[j]);
        vec[i] *= acc.get();
      }
    }
    return vec;
  };
  C total(1, 0);
  for (std::size_t v = 0; v < V; ++v) {
    if (seen[v]) continue;
    CSum<Real> acc;
    for (const C& x : msg(v, -1)) acc.add(x);
    total *= acc.get();
  }
  return total;
}

inline i64 tree_signature(const FramedTree& t) { return signature(t.linking()); }

// J(alpha) * prod_v q^{f_v (alpha_v^2 - 1)/4} sin(pi alpha_v/K) over a color box, for tabulated links.
template <class Real>
std::complex<Real> table_sum(i64 K, const JonesTable& J, const std::vector<i64>& f, bool odd) {
  const Real pi = std::numbers::pi_v<Real>;
  std::vector<i64> cols;
  if (odd) {
    for (i64 a = -K + 1; a < K; ++a)
      if (floor_mod(a, 2) == 1) cols.push_back(a);
  } else {
    if (!J.all_colors) fail(errc::unsupported, J.id + " has no values at even colors");
    for (i64 a = 1; a < K; ++a) cols.push_back(a);
  }
  const std::size_t N = f.size();
  std::vector<std::size_t> idx(N, 0);
  std::vector<i64> al(N);
  CSum<Real> acc;
  if (N == 0) return std::complex<Real>(1, 0);
  while (true) {
    std::complex<Real> t(1, 0);
    for (std::size_t j = 0; j < N; ++j) {
      al[j] = cols[idx[j]];
      const i64 e = floor_mod(floor_mod(f[j], 4 * K) * floor_mod(al[j] * al[j] - 1, 4 * K), 4 * K);
      t *= cis(pi * static_cast<Real>(e) / (2 * static_cast<Real>(K))) * std::sin(pi * static_cast<Real>(al[j]) / static_cast<Real>(K));
    }
    const auto jv = J.numeric(al, K);
    acc.add(t * std::complex<Real>(static_cast<Real>(jv.real()), static_cast<Real>(jv.imag())));
    std::size_t j = 0;
    while (j < N && ++idx[j] == cols.size()) idx[j++] = 0;
    if (j == N) break;
  }
  return acc.get();
}

}  // namespace detail

// Z(M;k)/Z(S^3;k) from the SU(2) surgery formula, colors 1..K-1. K may be any odd integer >= 3.
template <class Real = double>
std::complex<Real> z_numeric(const ManifoldSpec& M, i64 K) {
  const Real pi = std::numbers::pi_v<Real>;
  const Real Kr = static_cast<Real>(K);
  if (auto* ps = std::get_if<P1Surgery>(&M.v)) {
    const JonesTable J = builtin_jones(ps->jones);
    i64 sig = 0;
    for (i64 f : ps->framings) sig += sign(f);
    const Real N = static_cast<Real>(ps->framings.size());
    return std::pow(2 / Kr, N / 2) * detail::cis(-3 * pi * (Kr - 2) / (4 * Kr) * static_cast<Real>(sig)) *
           detail::table_sum<Real>(K, J, ps->framings, false);
  }
  const FramedTree t = surgery_tree(M);
  const Real V = static_cast<Real>(t.framings.size());
  const i64 sig = detail::tree_signature(t);
  return std::pow(2 / Kr, V / 2) * detail::cis(-3 * pi * (Kr - 2) / (4 * Kr) * static_cast<Real>(sig)) *
         detail::tree_sum<Real>(K, t, false);
}

// Z'(M;k) through an integer-framed tree presentation, odd colors in (-K, K).
template <class Real = double>
std::complex<Real> zprime_tree(const ManifoldSpec& M, const PrimeK& P) {
  const Real pi = std::numbers::pi_v<Real>;
  const i64 K = P.K();
  const Real Kr = static_cast<Real>(K);
  const FramedTree t = surgery_tree(M);
  const Real V = static_cast<Real>(t.framings.size());
  const i64 sig = detail::tree_signature(t);
  return std::pow(Kr, -V / 2) * detail::cis(-pi / 4 * (3 + P.kappa() - 6 / Kr) * static_cast<Real>(sig)) *
         detail::tree_sum<Real>(K, t, true);
}

namespace detail {

struct RationalComponent {
  i64 p, q;  // q > 0
  i64 qs;    // q^{-1} mod K
  i64 s;     // lower-right entry of the chain matrix
  i64 phi;
};

inline RationalComponent rational_component(i64 p, i64 q, const PrimeK& P) {
  if (q < 0) {
    p = -p;
    q = -q;
  }
  if (P.red(q) == 0) fail(errc::chain_degenerate, "q = " + std::to_string(q) + " vanishes mod K");
  const SL2 U = cf_expand(p, q).matrix();
  return {p, q, inv_mod(q, P.K()), U.s, rademacher_phi(U)};
}

// Prefactor of the rational-surgery formula, without the Legendre/sign part.
template <class Real>
std::complex<Real> rational_prefactor(const std::vector<RationalComponent>& cs, i64 sig, const PrimeK& P) {
  const Real pi = std::numbers::pi_v<Real>;
  const i64 K = P.K();
  const Real Kr = static_cast<Real>(K);
  mpz_class qprod = 1;
  i64 phisum = 0;
  for (const auto& c : cs) {
    qprod *= c.q;
    phisum += c.phi;
  }
  const Real N = static_cast<Real>(cs.size());
  std::complex<Real> pre = static_cast<Real>(legendre(qprod, P)) * std::pow(Kr, -N / 2);
  pre *= cis(-pi / 4 * static_cast<Real>(P.kappa() * sig)) * cis(-3 * pi * (Kr - 2) / (4 * Kr) * static_cast<Real>(sig));
  pre *= qc<Real>(-P.inv4() * floor_mod(phisum, K), K);
  if (cs.size() % 2) pre = -pre;
  return pre;
}

// q^{4^* q^*(p a^2 + s)} (i/2)(q^{-2^* q^* a} - q^{2^* q^* a})
template <class Real>
std::complex<Real> rational_factor(const RationalComponent& c, i64 a, const PrimeK& P) {
  const i64 K = P.K();
  const i64 e = P.red(P.inv4() * P.red(c.qs * P.red(P.red(c.p) * P.red(a * a) + c.s)));
  const i64 h = P.red(P.inv2() * P.red(c.qs * P.red(a)));
  return qc<Real>(e, K) * std::complex<Real>(0, Real(0.5)) * (qc<Real>(-h, K) - qc<Real>(h, K));
}

inline std::vector<i64> open_odd(i64 K) { return odd_colors(K, OddRange::open_range); }

}  // namespace detail

// Z'(M;k) by the rational-surgery formula over odd colors in (-K, K).
template <class Real = double>
std::complex<Real> zprime_numeric(const ManifoldSpec& M, const PrimeK& P) {
  using C = std::complex<Real>;
  const i64 K = P.K();
  const Real pi = std::numbers::pi_v<Real>;
  const Real Kr = static_cast<Real>(K);
  const auto cols = detail::open_odd(K);

  if (auto* l = std::get_if<Lens>(&M.v)) {
    const i64 ap = l->p < 0 ? -l->p : l->p;
    if (ap == 1) return C(1, 0);
    // L(p,q) = -p/q surgery on the unknot; q may be shifted by multiples of p
    i64 q = floor_mod(l->q, ap);
    while (P.red(q) == 0) q += ap;
    const auto c = detail::rational_component(-l->p, q, P);
    const i64 sig = sign(-l->p);
    detail::CSum<Real> acc;
    for (i64 a : cols) acc.add(jones_unknot_numeric<Real>(a, K) * detail::rational_factor<Real>(c, a, P));
    return detail::rational_prefactor<Real>({c}, sig, P) * acc.get();
  }

  if (auto* s = std::get_if<Seifert>(&M.v)) {
    const SeifertData d = s->data.normalized();
    std::vector<detail::RationalComponent> cs;
    cs.push_back(detail::rational_component(0, 1, P));
    for (auto [p, q] : d.fractions) cs.push_back(detail::rational_component(p, q, P));
    const std::size_t N = d.size();
    std::vector<std::vector<mpq_class>> L(N + 1, std::vector<mpq_class>(N + 1, 0));
    for (std::size_t j = 0; j < N; ++j) {
      L[j + 1][j + 1] = rat(d.fractions[j].first, d.fractions[j].second);
      L[0][j + 1] = L[j + 1][0] = 1;
    }
    const i64 sig = signature(L);
    const Real s1 = std::sin(pi / Kr);
    // star fast path: for fixed beta the fiber sums factorize
    detail::CSum<Real> acc;
    for (i64 b : cols) {
      const Real sb = std::sin(pi * static_cast<Real>(b) / Kr);
      C term = detail::rational_factor<Real>(cs[0], b, P) / s1;
      for (std::size_t j = 0; j < N; ++j) {
        detail::CSum<Real> fj;
        for (i64 a : cols)
          fj.add(std::sin(pi * static_cast<Real>(floor_mod(a * b, 2 * K)) / Kr) * detail::rational_factor<Real>(cs[j + 1], a, P));
        term *= fj.get();
      }
      for (std::size_t j = 0; j + 1 < N; ++j) term /= sb;
      if (N == 0) term *= sb;
      acc.add(term);
    }
    return detail::rational_prefactor<Real>(cs, sig, P) * acc.get();
  }

  // (p_j, 1) surgery on a table link with zero linking numbers
  const auto& ps = std::get<P1Surgery>(M.v);
  const JonesTable J = builtin_jones(ps.jones);
  if (J.arity != ps.framings.size()) fail(errc::bad_spec, "framing count does not match the link");
  i64 sig = 0;
  for (i64 f : ps.framings) sig += sign(f);
  const Real N = static_cast<Real>(ps.framings.size());
  return std::pow(Kr, -N / 2) * detail::cis(-pi / 4 * (3 + P.kappa() - 6 / Kr) * static_cast<Real>(sig)) *
         detail::table_sum<Real>(K, J, ps.framings, true);
}

struct KirbyMelvinReport {
  std::complex<double> z, zprime, factor;
  double error = 0;
  bool ok = false;
};

// Z(M;k)/Z(S^3;k) = Z'(M;k) * Z(M;1)/Z(S^3;1), the last factor conjugated when K = 1 mod 4.
inline KirbyMelvinReport kirby_melvin(const ManifoldSpec& M, i64 K, double tol = 1e-9) {
  KirbyMelvinReport r;
  const PrimeK P(K);
  r.z = z_numeric<double>(M, K);
  r.zprime = zprime_numeric<double>(M, P);
  r.factor = z_numeric<double>(M, 3);
  if (P.kappa() == 1) r.factor = std::conj(r.factor);
  r.error = std::abs(r.z - r.zprime * r.factor);
  r.ok = r.error <= tol * std::max(1.0, std::abs(r.z));
  return r;
}

inline bool kirby_melvin_check(const ManifoldSpec& M, i64 K, double tol = 1e-9) { return kirby_melvin(M, K, tol).ok; }

struct P1Result {
  CycInt value;
  CycInt S;
  i64 s_order;
};

// Exact Z' of (p_j, 1) surgery on a table link:
//   S = sum' q^{4^* sum p_j a_j^2} J(a + p^*), a over a full odd period,
// S must be divisible by x^{N(K-1)/2}; then Z' = phase * S * G^N / (kappa K)^N.
inline P1Result exact_p1_detail(const JonesTable& J, const std::vector<i64>& framings, const PrimeK& P) {
  const i64 K = P.K();
  const std::size_t N = framings.size();
  if (J.arity != N) fail(errc::bad_spec, "framing count does not match the link");
  if (N == 0) return {CycInt::one(P), CycInt::one(P), 0};
  std::vector<i64> pstar(N);
  for (std::size_t j = 0; j < N; ++j) {
    if (framings[j] == 0) fail(errc::not_rhs, "zero framing");
    if (P.red(framings[j]) == 0) fail(errc::p_divisible_by_k, "framing divisible by K");
    pstar[j] = even_inv(Residue(framings[j], P));
  }
  const auto cols = odd_colors(K, OddRange::full_period);
  std::vector<std::size_t> idx(N, 0);
  std::vector<i64> shifted(N);
  std::vector<mpz_class> full(static_cast<std::size_t>(K), 0);
  CycInt S = CycInt::zero(P);
  while (true) {
    i64 e = 0;
    for (std::size_t j = 0; j < N; ++j) {
      const i64 a = cols[idx[j]];
      e += P.red(P.red(framings[j]) * P.red(a * a));
      shifted[j] = a + pstar[j];
    }
    S += CycInt::qpow(P.inv4() * P.red(e), P) * J.exact(shifted, P);
    std::size_t j = 0;
    while (j < N && ++idx[j] == cols.size()) idx[j++] = 0;
    if (j == N) break;
  }
  const i64 need = std::min<i64>(static_cast<i64>(N) * P.half(), K - 1);
  const i64 ord = x_order(S);
  if (ord < need)
    fail(errc::divisibility_failure, "x-order " + std::to_string(ord) + " < " + std::to_string(need));

  int sg = 1;
  i64 e = 0;
  for (i64 p : framings) {
    sg *= sign(p);
    if (P.kappa() == -1 && p < 0) sg = -sg;
    e += 3 * sign(p) - P.red(p) - P.red(inv_mod(p, K));
  }
  CycInt num = S * pow(gauss_sum(1, P), static_cast<unsigned>(N));
  mpz_class den = 1;
  for (std::size_t j = 0; j < N; ++j) den *= P.kappa() * K;
  CycInt z = divide_exact(num, den, errc::non_integral_assembly) * CycInt::qpow(P.inv4() * floor_mod(e, K), P);
  if (sg < 0) z = -z;
  return {z, S, ord};
}

inline CycInt exact_p1(const P1Surgery& M, const PrimeK& P) { return exact_p1_detail(builtin_jones(M.jones), M.framings, P).value; }

}  // namespace qinv
