// qinv: exact SO(3) invariants, Ohtsuki series and identity sweeps from the command line.
//
//   qinv invariant --lens 3,1 --k 7
//   qinv verify --family lens --pmax 12 --primes 5..31
//   qinv verify --gauss --primes 3..101
//   qinv lambda --seifert 2/1,3/1,5/-4 --nmax 3 --reconstruct --primes 7..23
//
// Exit codes: 0 success, 2 usage or bad input, 3 failed computation or mismatch.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qinv/qinv.hpp"

using namespace qinv;
using json = nlohmann::ordered_json;

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

i64 to_int(const std::string& s) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw Usage("not an integer: '" + s + "'");
  }
  if (pos != s.size()) throw Usage("not an integer: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

// "5..31", "5,7,11" or a mix such as "5,7,11..19"
std::vector<i64> parse_primes(const std::string& s) {
  std::vector<i64> out;
  for (const auto& part : split(s, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_int(part));
      continue;
    }
    const i64 lo = to_int(part.substr(0, dots)), hi = to_int(part.substr(dots + 2));
    if (lo > hi) throw Usage("empty prime range " + part);
    for (i64 k = std::max<i64>(lo, 3); k <= hi; ++k)
      if (is_prime(k)) out.push_back(k);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) throw Usage("no primes given");
  for (i64 k : out) PrimeK{k};
  return out;
}

ManifoldSpec parse_lens(const std::string& s) {
  const auto v = split(s, ',');
  if (v.size() != 2) throw Usage("--lens expects p,q");
  return ManifoldSpec::lens(to_int(v[0]), to_int(v[1]));
}

ManifoldSpec parse_seifert(const std::string& s) {
  std::vector<std::pair<i64, i64>> f;
  for (const auto& frac : split(s, ',')) {
    const auto v = split(frac, '/');
    if (v.size() != 2) throw Usage("--seifert expects p1/q1,p2/q2,...");
    f.emplace_back(to_int(v[0]), to_int(v[1]));
  }
  if (f.empty()) throw Usage("--seifert needs at least one fibre");
  return ManifoldSpec::seifert(f);
}

// "unknot:3" or "unlink2:2,-3" or "empty:"
ManifoldSpec parse_p1(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw Usage("--p1 expects link:framing,...");
  std::vector<i64> fr;
  for (const auto& x : split(s.substr(colon + 1), ',')) fr.push_back(to_int(x));
  return ManifoldSpec::p1(s.substr(0, colon), fr);
}

ManifoldSpec manifold_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type")) throw Usage("manifold entry needs a \"type\"");
  const std::string t = j.at("type").get<std::string>();
  if (t == "lens") return ManifoldSpec::lens(j.at("p").get<i64>(), j.at("q").get<i64>());
  if (t == "seifert") {
    std::vector<std::pair<i64, i64>> f;
    for (const auto& pq : j.at("fractions")) f.emplace_back(pq.at(0).get<i64>(), pq.at(1).get<i64>());
    return ManifoldSpec::seifert(f);
  }
  if (t == "p1") return ManifoldSpec::p1(j.at("jones").get<std::string>(), j.at("framings").get<std::vector<i64>>());
  throw Usage("unknown manifold type '" + t + "'");
}

std::vector<ManifoldSpec> manifolds_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Usage("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Usage(path + ": " + e.what());
  }
  if (j.is_object() && j.contains("manifolds")) j = j["manifolds"];
  if (j.is_object()) j = json::array({j});
  std::vector<ManifoldSpec> out;
  try {
    for (const auto& m : j) out.push_back(manifold_from_json(m));
  } catch (const json::exception& e) {
    throw Usage(path + ": " + e.what());
  }
  return out;
}

std::string join(const std::vector<std::string>& v, const char* sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

template <class C>
std::vector<std::string> strs(const C& c) {
  std::vector<std::string> out;
  for (const auto& x : c) {
    std::ostringstream os;
    os << x;
    out.push_back(os.str());
  }
  return out;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Rows with named columns; TSV prints a header, JSON an array of objects.
struct Table {
  std::vector<std::string> cols;
  std::vector<std::vector<std::string>> rows;

  void write(std::ostream& os, const std::string& format) const {
    if (format == "json") {
      json a = json::array();
      for (const auto& r : rows) {
        json o = json::object();
        for (std::size_t i = 0; i < cols.size(); ++i) o[cols[i]] = r[i];
        a.push_back(o);
      }
      os << a.dump(2) << "\n";
      return;
    }
    os << join(cols, "\t") << "\n";
    for (const auto& r : rows) os << join(r, "\t") << "\n";
  }
};

unsigned worker_count(unsigned flag) {
  if (flag > 0) return flag;
  if (const char* e = std::getenv("QINV_WORKERS")) {
    const long v = std::strtol(e, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs task(i) for i < n on a small pool; results land in slot i, so order never depends on scheduling.
template <class R, class F>
std::vector<R> run_parallel(std::size_t n, unsigned workers, F task) {
  std::vector<R> out(n);
  std::atomic<std::size_t> next{0};
  auto body = [&]() {
    for (std::size_t i; (i = next++) < n;) out[i] = task(i);
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < std::min<std::size_t>(workers, n); ++w) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
  return out;
}

struct Output {
  std::string format = "tsv";
  std::string path;

  void emit(const Table& t) const {
    if (path.empty()) {
      t.write(std::cout, format);
      return;
    }
    std::ofstream f(path);
    if (!f) throw Usage("cannot write " + path);
    t.write(f, format);
  }
};

struct Selection {
  std::vector<std::string> lens, seifert, p1;
  std::string json_file;

  std::vector<ManifoldSpec> collect() const {
    std::vector<ManifoldSpec> out;
    for (const auto& s : lens) out.push_back(parse_lens(s));
    for (const auto& s : seifert) out.push_back(parse_seifert(s));
    for (const auto& s : p1) out.push_back(parse_p1(s));
    if (!json_file.empty())
      for (auto& m : manifolds_from_file(json_file)) out.push_back(std::move(m));
    return out;
  }

  void add_options(CLI::App* app) {
    app->add_option("--lens", lens, "lens space p,q (repeatable)");
    app->add_option("--seifert", seifert, "Seifert fibres p1/q1,p2/q2,... (repeatable)");
    app->add_option("--p1", p1, "surgery on a built-in link, e.g. unknot:3 or unlink2:2,-3 (repeatable)");
    app->add_option("--json", json_file, "file with manifold objects");
  }
};

// ---- invariant

int cmd_invariant(const Selection& sel, std::optional<i64> K_opt, std::optional<i64> level, const Output& out) {
  if (K_opt && level) throw Usage("give either --k or --level");
  if (!K_opt && !level) throw Usage("--k or --level is required");
  const PrimeK K(K_opt ? *K_opt : *level + 2);
  const auto ms = sel.collect();
  if (ms.empty()) throw Usage("no manifold given");
  Table t{{"manifold", "K", "coefficients", "x_coefficients", "diamond", "re", "im", "oracle_re", "oracle_im"}, {}};
  for (const auto& M : ms) {
    const CycInt z = zprime_exact(M, K);
    const auto c = eval_complex(z);
    std::string ore = "-", oim = "-";
    try {
      const auto o = zprime_numeric(M, K);
      ore = fmt_double(o.real());
      oim = fmt_double(o.imag());
    } catch (const error&) {
      // no numeric path for this presentation at this K
    }
    t.rows.push_back({M.id(), std::to_string(K.K()), join(strs(z.coeffs())), join(strs(to_xpoly(z).coeffs())),
                      join(strs(diamond(z).coeffs())), fmt_double(c.real()), fmt_double(c.imag()), ore, oim});
  }
  out.emit(t);
  return 0;
}

// ---- verify

struct Row {
  std::vector<std::string> cells;
  int status = 0;  // 0 pass or skipped, 3 fail
};

Row gauss_row(i64 k) {
  const PrimeK K(k);
  long checks = 0, bad = 0;
  auto expect = [&](bool c) {
    ++checks;
    bad += !c;
  };
  const CycInt G = gauss_sum(1, K);
  expect(G * G == CycInt::constant(K, K.kappa() * k));
  expect(x_order(G) == K.half());
  std::mt19937 rng(static_cast<unsigned>(k));
  std::uniform_int_distribution<i64> d(1, k - 1);
  auto square = [&](i64 p, i64 q, i64 n) {
    const i64 c = K.red(p * inv_mod(q, k));
    expect(completed_square_lhs(c, n, K) == completed_square_rhs(c, n, K));
  };
  auto moment = [&](i64 p, i64 q, unsigned m) {
    const int mis = diamond(normalized_gauss_moment(p, q, m, K)).first_mismatch(gauss_moment_diamond(p, q, m, K));
    expect(mis < 0 || mis >= static_cast<int>((k + 1) / 2 - static_cast<i64>(m)));
  };
  if (k <= 13) {
    for (i64 p = 1; p < k; ++p)
      for (i64 q = 1; q < k; ++q)
        for (i64 n = 1; n < k; ++n) square(p, q, n);
  } else {
    for (int t = 0; t < 200; ++t) square(d(rng), d(rng), d(rng));
  }
  if (k <= 7) {
    for (i64 p = 1; p < k; ++p)
      for (i64 q = 1; q < k; ++q)
        for (unsigned m = 0; m <= K.half(); ++m) moment(p, q, m);
  } else if (k <= 31) {
    for (unsigned m = 0; m <= K.half(); ++m) moment(d(rng), d(rng), m);
  }
  return {{"gauss", std::to_string(k), bad ? "FAIL" : "PASS", std::to_string(checks), std::to_string(bad)}, bad ? 3 : 0};
}

int cmd_verify(const Selection& sel, const std::string& family, i64 pmax, bool gauss, const std::string& primes_s, unsigned workers,
               const Output& out) {
  if (primes_s.empty()) throw Usage("--primes is required");
  const auto primes = parse_primes(primes_s);
  if (gauss) {
    const auto rows = run_parallel<Row>(primes.size(), workers, [&](std::size_t i) { return gauss_row(primes[i]); });
    Table t{{"check", "K", "verdict", "checks", "failures"}, {}};
    int rc = 0;
    for (const auto& r : rows) {
      t.rows.push_back(r.cells);
      rc = std::max(rc, r.status);
    }
    out.emit(t);
    return rc;
  }
  auto ms = sel.collect();
  if (!family.empty()) {
    if (family != "lens") throw Usage("unknown family '" + family + "'");
    if (pmax < 1) throw Usage("--pmax must be positive");
    for (i64 p = -pmax; p <= pmax; ++p)
      for (i64 q = 1; q < std::abs(p); ++q)
        if (gcd(p, q) == 1) ms.push_back(ManifoldSpec::lens(p, q));
  }
  if (ms.empty()) throw Usage("no manifold given");
  struct Task {
    std::size_t m;
    i64 k;
  };
  std::vector<Task> tasks;
  for (std::size_t m = 0; m < ms.size(); ++m)
    for (i64 k : primes) tasks.push_back({m, k});
  const auto rows = run_parallel<Row>(tasks.size(), workers, [&](std::size_t i) {
    const auto& M = ms[tasks[i].m];
    const auto r = verify_identity(M, {tasks[i].k}).front();
    std::string verdict = r.equal ? "PASS" : "FAIL", note = r.error;
    int status = r.equal ? 0 : 3;
    if (!r.error.empty() && is_input_error(r.code)) {
      verdict = "SKIP";
      status = 0;
    }
    return Row{{M.id(), std::to_string(r.K), verdict, std::to_string(r.first_mismatch), r.ohtsuki_range ? "yes" : "no", note}, status};
  });
  Table t{{"manifold", "K", "verdict", "first_mismatch", "K_above_H1", "note"}, {}};
  int rc = 0;
  for (const auto& r : rows) {
    t.rows.push_back(r.cells);
    rc = std::max(rc, r.status);
  }
  out.emit(t);
  return rc;
}

// ---- lambda

int cmd_lambda(const Selection& sel, std::size_t nmax, bool reconstruct, const std::string& primes_s, const Output& out) {
  const auto ms = sel.collect();
  if (ms.empty()) throw Usage("no manifold given");
  Table t{{"manifold", "n", "lambda", "provenance", "closed_form", "denominator_bound", "small_primes_only", "primes"}, {}};
  int rc = 0;
  for (const auto& M : ms) {
    const mpz_class h = h1_order(M);
    std::optional<LambdaSeries> closed;
    try {
      closed = lambda_series(M, nmax);
    } catch (const error& e) {
      if (!reconstruct) throw;
    }
    if (!reconstruct) {
      for (std::size_t n = 0; n <= nmax; ++n) {
        const mpq_class& v = closed->lambda[n];
        t.rows.push_back({M.id(), std::to_string(n), v.get_str(), provenance_name(Provenance::closed_form), v.get_str(),
                          lambda_denominator_bound(n, h) % v.get_den() == 0 ? "ok" : "violated",
                          denominator_structure_ok(v, n, h) ? "ok" : "violated", "-"});
      }
      continue;
    }
    if (primes_s.empty()) throw Usage("--reconstruct needs --primes");
    const auto primes = parse_primes(primes_s);
    if (static_cast<i64>(2 * nmax + 1) > primes.front()) throw Usage("n_max exceeds (smallest prime - 1)/2");
    const auto r = reconstruct_lambda(M, primes, nmax);
    for (std::size_t n = 0; n <= nmax; ++n) {
      std::string cf = "-";
      if (closed) {
        cf = closed->lambda[n].get_str();
        if (closed->lambda[n] != r.lambda[n]) rc = 3;
      }
      if (!r.bound_ok[n] || !r.structure_ok[n]) rc = 3;
      t.rows.push_back({M.id(), std::to_string(n), r.lambda[n].get_str(), provenance_name(Provenance::reconstruction), cf,
                        r.bound_ok[n] ? "ok" : "violated", r.structure_ok[n] ? "ok" : "violated", join(strs(r.primes_used[n]), ",")});
    }
  }
  out.emit(t);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact SO(3) quantum invariants and Ohtsuki series"};
  app.require_subcommand(1);
  app.fallthrough();
  Output out;
  unsigned workers = 0;
  app.add_option("--format", out.format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}));
  app.add_option("--out", out.path, "write the report here instead of stdout");
  app.add_option("--workers", workers, "worker threads (default QINV_WORKERS or the core count)");

  Selection inv_sel, ver_sel, lam_sel;
  std::optional<i64> K, level;
  auto* inv = app.add_subcommand("invariant", "exact Z' at one prime K");
  inv_sel.add_options(inv);
  inv->add_option("--k,-K", K, "the odd prime K = k + 2");
  inv->add_option("--level", level, "the level k, K = k + 2");

  std::string family, primes;
  i64 pmax = 0;
  bool gauss = false;
  auto* ver = app.add_subcommand("verify", "check diamond(|H| leg(|H|) Z') = vee(lambda) prime by prime");
  ver_sel.add_options(ver);
  ver->add_option("--family", family, "built-in family (lens)");
  ver->add_option("--pmax", pmax, "largest |p| for --family lens");
  ver->add_flag("--gauss", gauss, "run the Gauss sum identity sweep instead");
  ver->add_option("--primes", primes, "e.g. 5..31 or 7,11,13");

  std::size_t nmax = 4;
  bool reconstruct = false;
  std::string lprimes;
  auto* lam = app.add_subcommand("lambda", "the Ohtsuki series lambda_n");
  lam_sel.add_options(lam);
  lam->add_option("--nmax", nmax, "highest n");
  lam->add_flag("--reconstruct", reconstruct, "recover lambda_n from residues by CRT");
  lam->add_option("--primes", lprimes, "primes for --reconstruct");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    if (inv->parsed()) return cmd_invariant(inv_sel, K, level, out);
    if (ver->parsed()) return cmd_verify(ver_sel, family, pmax, gauss, primes, worker_count(workers), out);
    return cmd_lambda(lam_sel, nmax, reconstruct, lprimes, out);
  } catch (const Usage& e) {
    std::cerr << "qinv: " << e.what() << "\n";
    return 2;
  } catch (const error& e) {
    std::cerr << "qinv: " << e.what() << "\n";
    return is_input_error(e.code()) ? 2 : 3;
  }
}
