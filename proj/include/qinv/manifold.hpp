#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "arith.hpp"

namespace qinv {

// Seifert manifold X(p_1/q_1, ..., p_N/q_N): (p_j, q_j) surgeries on N unknots
// simply linked to a 0-framed central unknot.
struct SeifertData {
  std::vector<std::pair<i64, i64>> fractions;

  SeifertData() = default;
  explicit SeifertData(std::vector<std::pair<i64, i64>> f) : fractions(std::move(f)) {
    if (fractions.empty()) fail(errc::bad_spec, "Seifert data needs at least one fiber");
    for (auto [p, q] : fractions) {
      if (p == 0) fail(errc::bad_spec, "fiber with p = 0");
      if (gcd(p, q) != 1) fail(errc::not_coprime, "fiber " + std::to_string(p) + "/" + std::to_string(q));
    }
  }

  std::size_t size() const { return fractions.size(); }

  mpz_class P() const {
    mpz_class r = 1;
    for (auto [p, q] : fractions) r *= p;
    return r;
  }
  mpz_class H() const {
    mpq_class s = 0;
    for (auto [p, q] : fractions) s += rat(q, p);
    mpq_class h = s * mpq_class(P());
    h.canonicalize();
    return h.get_num();
  }
  // Same manifold with every q_j > 0.
  SeifertData normalized() const {
    SeifertData r;
    for (auto [p, q] : fractions) r.fractions.emplace_back(q < 0 ? -p : p, q < 0 ? -q : q);
    return r;
  }

  std::string str() const {
    std::ostringstream os;
    for (std::size_t j = 0; j < fractions.size(); ++j) os << (j ? "," : "") << fractions[j].first << "/" << fractions[j].second;
    return os.str();
  }
};

struct Lens {
  i64 p = 1, q = 0;
};

struct Seifert {
  SeifertData data;
};

// (p_j, 1) surgeries on the components of a built-in or externally supplied link.
struct P1Surgery {
  std::string jones = "unknot";
  std::vector<i64> framings;
};

struct ManifoldSpec {
  std::variant<Lens, Seifert, P1Surgery> v;

  static ManifoldSpec lens(i64 p, i64 q) {
    if (p == 0) fail(errc::not_rhs, "L(0,q) is not a rational homology sphere");
    if (gcd(p, q) != 1) fail(errc::not_coprime, "lens space needs gcd(p,q) = 1");
    return {Lens{p, q}};
  }
  static ManifoldSpec seifert(std::vector<std::pair<i64, i64>> f) { return {Seifert{SeifertData(std::move(f))}}; }
  static ManifoldSpec p1(std::string jones, std::vector<i64> framings) {
    return {P1Surgery{std::move(jones), std::move(framings)}};
  }

  std::string id() const {
    std::ostringstream os;
    if (auto* l = std::get_if<Lens>(&v)) {
      os << "lens(" << l->p << "," << l->q << ")";
    } else if (auto* s = std::get_if<Seifert>(&v)) {
      os << "seifert(" << s->data.str() << ")";
    } else {
      auto& p = std::get<P1Surgery>(v);
      os << "p1(" << p.jones << ";";
      for (std::size_t j = 0; j < p.framings.size(); ++j) os << (j ? "," : "") << p.framings[j];
      os << ")";
    }
    return os.str();
  }
};

}  // namespace qinv
