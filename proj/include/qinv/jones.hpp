#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "arith.hpp"
#include "cyclotomic.hpp"
#include "series.hpp"

namespace qinv {

inline void require_odd(i64 a) {
  if (floor_mod(a, 2) == 0) fail(errc::even_color, "color " + std::to_string(a) + " is even");
}

inline CycInt jones_unknot(i64 alpha, const PrimeK& K) {
  require_odd(alpha);
  return sin_ratio(alpha, K);
}

template <class Real = double>
Real jones_unknot_numeric(i64 alpha, i64 K) {
  const Real pi = std::numbers::pi_v<Real>;
  return std::sin(pi * static_cast<Real>(alpha) / static_cast<Real>(K)) / std::sin(pi / static_cast<Real>(K));
}

namespace detail {

// (w^{b a} - w^{-b a})/(w^b - w^{-b}) = sum_{i<a} w^{b(a-1-2i)} for a > 0, odd in a.
inline CycInt w_geometric(i64 b, i64 a, const PrimeK& K) {
  if (a == 0) return CycInt::zero(K);
  if (a < 0) return -w_geometric(b, -a, K);
  CycInt r = CycInt::zero(K);
  for (i64 i = 0; i < a; ++i) r += wpow(b * (a - 1 - 2 * i), K);
  return r;
}

// (z^{-b a} - z^{b a})/(z^{-b} - z^{b}), z = q^{2^*}
inline CycInt z_geometric(i64 b, i64 a, const PrimeK& K) {
  if (a == 0) return CycInt::zero(K);
  if (a < 0) return -z_geometric(b, -a, K);
  std::vector<i64> full(static_cast<std::size_t>(K.K()), 0);
  for (i64 i = 0; i < a; ++i) ++full[static_cast<std::size_t>(K.red(K.inv2() * K.red(b * (2 * i - (a - 1)))))];
  return CycInt::from_counts(K, full);
}

}  // namespace detail

// Star link: central unknot colored beta, N unknots colored alpha_j each linked once with it.
//   sin(pi beta alpha_1/K)/sin(pi/K) * prod_{j>=2} sin(pi beta alpha_j/K)/sin(pi beta/K)
inline CycInt jones_seifert(i64 beta, const std::vector<i64>& alphas, const PrimeK& K) {
  require_odd(beta);
  for (i64 a : alphas) require_odd(a);
  if (alphas.empty()) return sin_ratio(beta, K);
  CycInt r = sin_ratio(beta * alphas[0], K);
  for (std::size_t j = 1; j < alphas.size(); ++j) r *= detail::w_geometric(beta, alphas[j], K);
  return r;
}

template <class Real = double>
Real jones_seifert_numeric(i64 beta, const std::vector<i64>& alphas, i64 K) {
  require_odd(beta);
  for (i64 a : alphas) require_odd(a);
  const Real pi = std::numbers::pi_v<Real>;
  const Real Kr = static_cast<Real>(K);
  const Real sb = std::sin(pi * static_cast<Real>(beta) / Kr);
  if (floor_mod(beta, K) == 0) return static_cast<Real>(eval_complex<Real>(jones_seifert(beta, alphas, PrimeK(K))).real());
  Real v = 1 / std::sin(pi / Kr);
  for (i64 a : alphas) v *= std::sin(pi * static_cast<Real>(beta * a) / Kr);
  const std::size_t N = alphas.size();
  for (std::size_t j = 0; j + 1 < N; ++j) v /= sb;
  if (N == 0) v *= sb;
  return v;
}

// J/(prod colors) = C * prod_i f(a_i * (prod_{v in vars_i} color_v) * h)^{power_i},
// f(z) = sinh(z)/z, h = i pi/K. Used for the expansion-structure check.
struct TrigForm {
  struct Factor {
    mpq_class a;
    std::vector<std::size_t> vars;
    int power;
  };
  std::size_t arity = 0;
  mpq_class C = 1;
  std::vector<Factor> factors;
};

struct JonesTable {
  std::string id;
  std::size_t arity = 0;
  std::function<CycInt(const std::vector<i64>&, const PrimeK&)> exact;
  std::function<std::complex<double>(const std::vector<i64>&, i64)> numeric;
  bool all_colors = false;  // numeric evaluator accepts even colors too
  std::optional<TrigForm> trig;
};

inline JonesTable unlink_table(std::size_t n) {
  JonesTable t;
  t.id = n == 1 ? "unknot" : "unlink" + std::to_string(n);
  t.arity = n;
  t.exact = [](const std::vector<i64>& a, const PrimeK& K) {
    CycInt r = CycInt::one(K);
    for (i64 x : a) r *= jones_unknot(x, K);
    return r;
  };
  t.numeric = [](const std::vector<i64>& a, i64 K) {
    double r = 1;
    for (i64 x : a) r *= jones_unknot_numeric(x, K);
    return std::complex<double>(r, 0);
  };
  t.all_colors = true;
  TrigForm f;
  f.arity = n;
  for (std::size_t j = 0; j < n; ++j) {
    f.factors.push_back({1, {j}, 1});
    f.factors.push_back({1, {}, -1});
  }
  t.trig = f;
  return t;
}

// J(beta) = prod_j (z^{-a_j beta} - z^{a_j beta}) / ((z^{-1} - z)(z^{-beta} - z^{beta})^{N-1}),
// z = q^{2^*}; the one-color function left after summing the fibers of a Seifert link.
inline JonesTable seifert_jbeta_table(std::vector<i64> a) {
  JonesTable t;
  t.id = "seifert-jbeta";
  for (std::size_t j = 0; j < a.size(); ++j) t.id += (j ? "," : ":") + std::to_string(a[j]);
  t.arity = 1;
  t.exact = [a](const std::vector<i64>& c, const PrimeK& K) {
    const i64 b = c.at(0);
    require_odd(b);
    if (a.empty()) return zratio(b, K);
    CycInt r = zratio(a[0] * b, K);
    for (std::size_t j = 1; j < a.size(); ++j) r *= detail::z_geometric(b, a[j], K);
    return r;
  };
  t.numeric = [e = t.exact](const std::vector<i64>& c, i64 K) { return eval_complex(e(c, PrimeK(K))); };
  TrigForm f;
  f.arity = 1;
  for (i64 aj : a) {
    f.C *= aj;
    f.factors.push_back({mpq_class(aj), {0}, 1});
  }
  f.factors.push_back({1, {}, -1});
  if (a.size() >= 1) f.factors.push_back({1, {0}, -static_cast<int>(a.size()) + 1});
  t.trig = f;
  return t;
}

inline JonesTable empty_link_table() {
  JonesTable t;
  t.id = "empty";
  t.arity = 0;
  t.exact = [](const std::vector<i64>&, const PrimeK& K) { return CycInt::one(K); };
  t.numeric = [](const std::vector<i64>&, i64) { return std::complex<double>(1, 0); };
  t.all_colors = true;
  t.trig = TrigForm{};
  return t;
}

// Table built from exact coefficient vectors at colors 1, 3, ..., K-2 for one K,
// extended by oddness and 2K-periodicity.
inline JonesTable tabulated_jones(std::string id, std::size_t arity, i64 K, std::map<std::vector<i64>, std::vector<mpz_class>> values) {
  JonesTable t;
  t.id = std::move(id);
  t.arity = arity;
  auto data = std::make_shared<std::map<std::vector<i64>, std::vector<mpz_class>>>(std::move(values));
  t.exact = [data, K](const std::vector<i64>& c, const PrimeK& Kp) {
    if (Kp.K() != K) fail(errc::mixed_modulus, "table is tabulated at K=" + std::to_string(K));
    std::vector<i64> key;
    int sgn_ = 1;
    for (i64 a : c) {
      require_odd(a);
      i64 r = floor_mod(a, 2 * K);
      if (r == K) return CycInt::zero(Kp);
      if (r > K) {
        r = 2 * K - r;
        sgn_ = -sgn_;
      }
      key.push_back(r);
    }
    auto it = data->find(key);
    if (it == data->end()) fail(errc::unsupported, "color tuple missing from Jones table");
    CycInt v = CycInt::from_coeffs(Kp, it->second);
    return sgn_ < 0 ? -v : v;
  };
  t.numeric = [e = t.exact](const std::vector<i64>& c, i64 Kv) { return eval_complex(e(c, PrimeK(Kv))); };
  return t;
}

inline JonesTable builtin_jones(const std::string& id) {
  if (id == "unknot") return unlink_table(1);
  if (id.rfind("unlink", 0) == 0 && id.size() > 6) return unlink_table(static_cast<std::size_t>(std::stoul(id.substr(6))));
  if (id == "empty") return empty_link_table();
  fail(errc::unsupported, "no built-in Jones table '" + id + "'");
}

// ---- expansion structure -----------------------------------------------------

struct ExpansionReport {
  std::string id;
  std::size_t n_max = 0;
  bool ok = true;
  std::vector<std::string> violations;
  std::vector<int> max_m;  // largest m with a nonzero D_{m,n}, per n (-1 when none)
};

namespace detail {

using Mono = std::vector<int>;  // exponent per color
using Poly = std::map<Mono, mpq_class>;
using HSeries = std::vector<Poly>;

inline void padd(Poly& a, const Poly& b, const mpq_class& s = 1) {
  for (const auto& [m, c] : b) {
    auto& v = a[m];
    v += c * s;
    if (v == 0) a.erase(m);
  }
}

inline Poly pmul(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Mono m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      auto& v = r[m];
      v += ca * cb;
      if (v == 0) r.erase(m);
    }
  return r;
}

inline HSeries hexp(const HSeries& a, std::size_t arity) {
  const std::size_t D = a.size() - 1;
  HSeries r(D + 1);
  r[0][Mono(arity, 0)] = 1;
  for (std::size_t n = 1; n <= D; ++n) {
    Poly s;
    for (std::size_t k = 1; k <= n; ++k) padd(s, pmul(a[k], r[n - k]), mpq_class(static_cast<long>(k)));
    padd(r[n], s, mpq_class(1, static_cast<unsigned long>(n)));
  }
  return r;
}

}  // namespace detail

inline ExpansionReport expansion_check(const JonesTable& J, std::size_t n_max) {
  using namespace detail;
  ExpansionReport rep;
  rep.id = J.id;
  rep.n_max = n_max;
  if (!J.trig) fail(errc::unsupported, "table '" + J.id + "' has no closed trigonometric form");
  const TrigForm& T = *J.trig;
  const std::size_t N = T.arity;

  // log f(z) as a series in z
  RatSeries f(n_max);
  mpz_class fact = 1;
  for (std::size_t k = 0; 2 * k <= n_max; ++k) {
    if (k) fact *= static_cast<unsigned long>((2 * k) * (2 * k + 1));
    f[2 * k] = mpq_class(1) / mpq_class(fact);
  }
  const RatSeries lf = s_log(f);

  HSeries L(n_max + 1);
  for (const auto& fac : T.factors) {
    for (std::size_t k = 1; k <= n_max; ++k) {
      if (lf[k] == 0) continue;
      Mono m(N, 0);
      for (std::size_t v : fac.vars) m[v] += static_cast<int>(k);
      mpq_class c = lf[k] * fac.power;
      for (std::size_t i = 0; i < k; ++i) c *= fac.a;
      Poly p;
      p[m] = c;
      padd(L[k], p);
    }
  }
  HSeries E = hexp(L, N);
  rep.max_m.assign(n_max + 1, -1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    for (const auto& [mono, c] : E[n]) {
      int m = 0;
      bool even = true;
      for (int e : mono) {
        if (e % 2) even = false;
        m += e / 2;
      }
      if (!even) {
        rep.ok = false;
        rep.violations.push_back("n=" + std::to_string(n) + ": odd power of a color");
        continue;
      }
      rep.max_m[n] = std::max(rep.max_m[n], m);
      if (4 * m > 3 * static_cast<int>(n)) {
        rep.ok = false;
        rep.violations.push_back("n=" + std::to_string(n) + ": m=" + std::to_string(m) + " exceeds 3n/4");
      }
      for (int e : mono)
        if (e / 2 > static_cast<int>(n) - m) {
          rep.ok = false;
          rep.violations.push_back("n=" + std::to_string(n) + ": m_j=" + std::to_string(e / 2) + " exceeds n-m");
        }
    }
  }
  return rep;
}

}  // namespace qinv
