#pragma once

// Batch front end: compute a constant by a named method, compare methods,
// run audit suites, and print per-block convergence tables.
//
//   stieltjes <compute|compare|audit|table|methods> [--n INT] [--a REAL] [--k INT]
//             [--method NAME[,NAME...]] [--tol REAL] [--blocks LO..HI]
//             [--suite NAME] [--format json|csv|plain]
//
// Exit codes: 0 success, 2 usage or unsupported domain, 3 budget or
// tolerance failure (best value still printed), 4 failed audit or
// disagreeing comparison.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stieltjes/identities.hpp"
#include "stieltjes/oracle.hpp"
#include "stieltjes/quadrature.hpp"
#include "stieltjes/series.hpp"
#include "stieltjes/specfun.hpp"

namespace stieltjes::cli {

enum class Command { compute, compare, audit, table, methods };
enum class Format { json, csv, plain };

struct Request {
  Command command = Command::compute;
  HurwitzPoint point;
  bool point_given = false;
  std::optional<int> k;
  std::vector<std::string> methods;
  std::optional<double> tol;
  int block_lo = 1, block_hi = 0;
  std::string suite = "all";
  Format format = Format::json;
  int min_blocks = 0;
};

/// Raised by a method wrapper when the evaluator gave up; carries the best value.
struct method_failure : std::runtime_error {
  EvalResult best;
  method_failure(const std::string& what, EvalResult r) : std::runtime_error(what), best(std::move(r)) {}
};

/// Raised for inputs a method does not cover.
struct unsupported : std::domain_error {
  using std::domain_error::domain_error;
};

struct MethodInfo {
  std::string name;
  std::string formula;
  std::string domain;
  double default_tol;
  bool has_blocks;
  std::function<void(const Request&)> check;
  std::function<EvalResult(const Request&)> run;
};

namespace detail {

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double tol_of(const Request& r, double fallback) { return r.tol.value_or(fallback); }

inline SeriesConfig series_cfg(const Request& r, double fallback) {
  SeriesConfig c;
  c.tol = tol_of(r, fallback);
  if (r.min_blocks > 0) {
    c.min_blocks = r.min_blocks;
    c.max_blocks = std::max(c.max_blocks, r.min_blocks);
  }
  return c;
}

inline QuadratureSpec quad_spec(const Request& r, double fallback) {
  QuadratureSpec q;
  q.tol = tol_of(r, fallback);
  return q;
}

/// Runs a series evaluator, shifting its value by `offset`.
template <class F>
EvalResult series_call(F&& f, double offset = 0) {
  try {
    EvalResult r = f();
    r.value += offset;
    return r;
  } catch (const budget_exhausted<EvalResult>& e) {
    EvalResult best = e.partial();
    best.value += offset;
    throw method_failure(e.what(), best);
  }
}

/// Runs a quadrature, mapping its value through `post`.
template <class F, class Post>
EvalResult quad_call(F&& f, Post&& post) {
  const auto start = std::chrono::steady_clock::now();
  auto to_eval = [&](const QuadResult& q) {
    EvalResult r;
    r.value = post(q.value);
    r.tail_bound = q.abs_error_est;
    r.blocks_used = 1;
    r.terms_used = std::max<long long>(q.evaluations, 1);
    r.elapsed = std::chrono::steady_clock::now() - start;
    return r;
  };
  try {
    return to_eval(f());
  } catch (const tolerance_not_met<QuadResult>& e) {
    throw method_failure(e.what(), to_eval(e.best()));
  }
}

inline void need(bool ok, const std::string& msg) {
  if (!ok) throw unsupported(msg);
}

inline void need_point(const Request& r, int n, bool a_one, const std::string& name) {
  need(r.point.n == n, name + " computes n = " + std::to_string(n) + " only");
  if (a_one) need(r.point.a == 1.0, name + " computes a = 1 only");
}

inline const PTable<double>& ptable() { return stieltjes::detail::shared_ptable(); }

/// Smallest power-of-two N (from 128) whose tail bound meets tol, up to the table size.
template <class F>
EvalResult grow_pseries(const Request& req, double tol, F&& eval) {
  const int top = ptable().max_index;
  if (req.min_blocks > 0) {
    need(req.min_blocks <= top, "p-constant table holds " + std::to_string(top) + " entries");
    return eval(req.min_blocks);
  }
  EvalResult r;
  for (int N = 128;; N *= 2) {
    if (N > top) N = top;
    r = eval(N);
    if (r.tail_bound <= tol) return r;
    if (N == top) break;
  }
  throw method_failure("tail bound " + fmt17(r.tail_bound) + " above tol with all " + std::to_string(top) +
                           " p-constants",
                       r);
}

}  // namespace detail

/// Every evaluator reachable from the command line.
inline const std::vector<MethodInfo>& registry() {
  using namespace detail;
  static const std::vector<MethodInfo> methods = [] {
    std::vector<MethodInfo> m;
    const double g = euler_gamma<double>;
    m.push_back({"addison", "Addison dyadic series, first form", "n=0, a=1", 1e-10, true,
                 [](const Request& r) { need_point(r, 0, true, "addison"); },
                 [](const Request& r) {
                   return series_call([&] { return euler_addison(series_cfg(r, 1e-10), AddisonForm::first); });
                 }});
    m.push_back({"addison2", "Addison dyadic series, second form", "n=0, a=1", 1e-10, true,
                 [](const Request& r) { need_point(r, 0, true, "addison2"); },
                 [](const Request& r) {
                   return series_call([&] { return euler_addison(series_cfg(r, 1e-10), AddisonForm::second); });
                 }});
    m.push_back({"base2", "base-2 rectangular-function series for gamma_1", "n=1, a=1", 1e-8, true,
                 [](const Request& r) { need_point(r, 1, true, "base2"); },
                 [](const Request& r) { return series_call([&] { return gamma1_base2(series_cfg(r, 1e-8)); }); }});
    m.push_back({"base3", "base-3 rectangular-function series for gamma_1", "n=1, a=1", 1e-8, true,
                 [](const Request& r) { need_point(r, 1, true, "base3"); },
                 [](const Request& r) { return series_call([&] { return gamma1_base3(series_cfg(r, 1e-8)); }); }});
    m.push_back({"basek", "base-k rectangular-function series for gamma_1", "n=1, a=1, k in 2..16", 1e-8, true,
                 [](const Request& r) {
                   need_point(r, 1, true, "basek");
                   const int k = r.k.value_or(2);
                   need(k >= 2 && k <= 16, "basek needs k in 2..16");
                 },
                 [](const Request& r) {
                   return series_call([&] { return gamma1_basek(r.k.value_or(2), series_cfg(r, 1e-8)); });
                 }});
    m.push_back({"basek_n", "base-k block series for gamma_n", "n in 1..4, a=1, k in 2..6", 1e-7, true,
                 [](const Request& r) {
                   need(r.point.n >= 1 && r.point.n <= 4, "basek_n computes n in 1..4");
                   need(r.point.a == 1.0, "basek_n computes a = 1 only");
                   const int k = r.k.value_or(2);
                   need(k >= 2 && k <= 6, "basek_n needs k in 2..6");
                 },
                 [](const Request& r) {
                   return series_call(
                       [&] { return gamma_n_basek(r.point.n, r.k.value_or(2), series_cfg(r, 1e-7)); });
                 }});
    m.push_back({"prop3a", "Hurwitz dyadic double series for gamma_0(a)", "n=0, a>0", 1e-10, true,
                 [](const Request& r) { need_point(r, 0, false, "prop3a"); },
                 [](const Request& r) {
                   return series_call([&] { return gamma0_hurwitz(r.point.a, series_cfg(r, 1e-10)); });
                 }});
    m.push_back({"prop3b", "Hurwitz dyadic double series for gamma_1(a)", "n=1, a>0", 1e-10, true,
                 [](const Request& r) { need_point(r, 1, false, "prop3b"); },
                 [](const Request& r) {
                   return series_call([&] { return gamma1_hurwitz(r.point.a, series_cfg(r, 1e-10)); });
                 }});
    m.push_back({"addison_integral", "Addison series as an integral over (1-x)/(1+x)", "n=0, a=1", 1e-10, false,
                 [](const Request& r) { need_point(r, 0, true, "addison_integral"); },
                 [](const Request& r) {
                   return quad_call([&] { return addison_integral(quad_spec(r, 1e-10)); }, [](double v) { return v; });
                 }});
    m.push_back({"prop4", "kernel integral for gamma^2 + gamma_1", "n=1, a=1, k in 2..8 (kernel base)", 1e-10, false,
                 [](const Request& r) {
                   need_point(r, 1, true, "prop4");
                   const int k = r.k.value_or(2);
                   need(k >= 2 && k <= 8, "prop4 needs k in 2..8");
                 },
                 [g](const Request& r) {
                   return quad_call([&] { return prop4_gamma1(r.k.value_or(2), quad_spec(r, 1e-10)); },
                                    [g](double v) { return v - g * g; });
                 }});
    m.push_back({"prop4_psi", "kernel integral for ln a - psi(a)", "n=0, a>0, k in 2..8", 1e-10, false,
                 [](const Request& r) {
                   need_point(r, 0, false, "prop4_psi");
                   const int k = r.k.value_or(2);
                   need(k >= 2 && k <= 8, "prop4_psi needs k in 2..8");
                 },
                 [](const Request& r) {
                   const double la = std::log(r.point.a);
                   return quad_call([&] { return prop4_psi(r.point.a, r.k.value_or(2), quad_spec(r, 1e-10)); },
                                    [la](double v) { return v - la; });
                 }});
    m.push_back({"prop4_hurwitz", "kernel integral for gamma_1(a)", "n=1, a>0, k in 2..8", 1e-10, false,
                 [](const Request& r) {
                   need_point(r, 1, false, "prop4_hurwitz");
                   const int k = r.k.value_or(2);
                   need(k >= 2 && k <= 8, "prop4_hurwitz needs k in 2..8");
                 },
                 [](const Request& r) {
                   const double a = r.point.a;
                   return quad_call(
                       [&] { return prop4_gamma1_hurwitz(a, r.k.value_or(2), quad_spec(r, 1e-10)); },
                       [a](double v) { return prop4_extract_gamma1(a, v); });
                 }});
    m.push_back({"prop4_gamma2", "squared-weight kernel integral for gamma_2(a)", "n=2, a>0, k in 2..8", 1e-10, false,
                 [](const Request& r) {
                   need_point(r, 2, false, "prop4_gamma2");
                   const int k = r.k.value_or(2);
                   need(k >= 2 && k <= 8, "prop4_gamma2 needs k in 2..8");
                 },
                 [g](const Request& r) {
                   const double a = r.point.a;
                   SeriesConfig c;
                   c.tol = tol_of(r, 1e-10);
                   const EvalResult h = series_call([&] { return gamma1_hurwitz(a, c); });
                   EvalResult out = quad_call(
                       [&] { return prop4_gamma2_hurwitz(a, r.k.value_or(2), quad_spec(r, 1e-10)); },
                       [&](double v) { return prop4_extract_gamma2(a, v, h.value); });
                   out.tail_bound += 2 * g * h.tail_bound;
                   out.terms_used += h.terms_used;
                   return out;
                 }});
    m.push_back({"corollary3", "Gauss-series integral for ln a + gamma_0(a)", "n=0, a>0", 1e-10, false,
                 [](const Request& r) { need_point(r, 0, false, "corollary3"); },
                 [](const Request& r) {
                   const double la = std::log(r.point.a);
                   return quad_call([&] { return corollary3(r.point.a, quad_spec(r, 1e-10)); },
                                    [la](double v) { return v - la; });
                 }});
    m.push_back({"prop5a", "p-constant series for gamma_0(a)", "n=0, a>0", 1e-5, true,
                 [](const Request& r) { need_point(r, 0, false, "prop5a"); },
                 [](const Request& r) {
                   const double la = std::log(r.point.a);
                   return grow_pseries(r, tol_of(r, 1e-5), [&](int N) {
                     EvalResult e = gamma0_pseries(r.point.a, N, ptable());
                     e.value -= la;
                     for (auto& b : e.trace) b.partial_value -= la;
                     return e;
                   });
                 }});
    m.push_back({"prop5b", "p-constant series for gamma_1(a)", "n=1, a>0", 1e-5, true,
                 [](const Request& r) { need_point(r, 1, false, "prop5b"); },
                 [](const Request& r) {
                   const double h = 0.5 * std::log(r.point.a) * std::log(r.point.a);
                   return grow_pseries(r, tol_of(r, 1e-5), [&](int N) {
                     EvalResult e = gamma1_pseries(r.point.a, N, ptable());
                     e.value -= h;
                     for (auto& b : e.trace) b.partial_value -= h;
                     return e;
                   });
                 }});
    m.push_back({"oracle", "limit definition with Euler-Maclaurin correction", "n in 0..4, a>0", 1e-12, false,
                 [](const Request& r) { need(r.point.n <= 4, "oracle computes n <= 4"); },
                 [](const Request& r) {
                   const auto start = std::chrono::steady_clock::now();
                   const long long N = 1'000'000;
                   const OracleValue o = stieltjes_oracle(r.point, N);
                   EvalResult e;
                   e.value = o.value;
                   e.tail_bound = o.claimed_accuracy;
                   e.blocks_used = 1;
                   e.terms_used = N;
                   e.elapsed = std::chrono::steady_clock::now() - start;
                   if (r.tol && o.claimed_accuracy > *r.tol)
                     throw method_failure("oracle accuracy " + fmt17(o.claimed_accuracy) + " above tol", e);
                   return e;
                 }});
    return m;
  }();
  return methods;
}

inline const MethodInfo* find_method(const std::string& name) {
  for (const auto& m : registry())
    if (m.name == name) return &m;
  return nullptr;
}

inline std::string method_names() {
  std::string s;
  for (const auto& m : registry()) s += (s.empty() ? "" : ", ") + m.name;
  return s;
}

/// Outcome of one method at one point.
struct Computation {
  const MethodInfo* method = nullptr;
  EvalResult result;
  bool ok = true;
  std::string status = "ok";
  std::string message;
};

inline Computation compute(const MethodInfo& m, const Request& req) {
  m.check(req);
  Computation c;
  c.method = &m;
  try {
    c.result = m.run(req);
  } catch (const method_failure& e) {
    c.result = e.best;
    c.ok = false;
    c.status = "not_converged";
    c.message = e.what();
  } catch (const cancellation_error& e) {
    c.ok = false;
    c.status = "cancellation";
    c.message = e.what();
    c.result.value = std::numeric_limits<double>::quiet_NaN();
  }
  return c;
}

namespace detail {

inline nlohmann::ordered_json to_json(const Computation& c, const Request& req) {
  nlohmann::ordered_json out = {
      {"value", c.result.value},
      {"tail_bound", c.result.tail_bound},
      {"blocks_used", c.result.blocks_used},
      {"terms_used", c.result.terms_used},
      {"elapsed_ms", c.result.elapsed_ms()},
      {"method", c.method->name},
      {"n", req.point.n},
      {"a", req.point.a},
      {"paper_eq", c.method->formula},
      {"status", c.status},
  };
  if (req.k) out["k"] = *req.k;
  if (!c.message.empty()) out["message"] = c.message;
  return out;
}

inline nlohmann::ordered_json to_json(const AuditReport& r) {
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  for (const auto& [key, v] : r.inputs) inputs[key] = v;
  return {{"identity_name", r.identity_name}, {"lhs", r.lhs},
          {"rhs", r.rhs},                     {"discrepancy", r.discrepancy},
          {"tolerance", r.tolerance},         {"verdict", to_string(r.verdict)},
          {"inputs", inputs},                 {"detail", r.detail}};
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

inline void write_reports(std::ostream& os, const std::vector<AuditReport>& reports, Format f) {
  if (f == Format::json) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    os << arr.dump(2) << '\n';
  } else if (f == Format::csv) {
    os << "identity_name,lhs,rhs,discrepancy,tolerance,verdict\n";
    for (const auto& r : reports)
      os << csv_field(r.identity_name) << ',' << fmt17(r.lhs) << ',' << fmt17(r.rhs) << ',' << fmt17(r.discrepancy)
         << ',' << fmt17(r.tolerance) << ',' << to_string(r.verdict) << '\n';
  } else {
    for (const auto& r : reports)
      os << r.identity_name << ": " << to_string(r.verdict) << "  lhs " << fmt17(r.lhs) << "  rhs " << fmt17(r.rhs)
         << "  |diff| " << fmt17(r.discrepancy) << "  tol " << fmt17(r.tolerance) << '\n';
  }
}

inline bool parse_range(const std::string& s, int& lo, int& hi) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      lo = 1;
      hi = std::stoi(s);
    } else {
      lo = std::stoi(s.substr(0, dots));
      hi = std::stoi(s.substr(dots + 2));
    }
  } catch (const std::exception&) {
    return false;
  }
  return lo >= 1 && hi >= lo;
}

inline std::vector<AuditReport> run_suite(const std::string& suite, const Request& req) {
  std::vector<AuditReport> out;
  const bool all = suite == "all";
  if (all || suite == "corollary1") {
    out.push_back(corollary1_audit());
    AuditReport tight = corollary1_audit(0.1);
    tight.identity_name += "_tight";
    if (tight.verdict != out.back().verdict) {
      tight.verdict = Verdict::failed;
      tight.detail += "; verdict changed under 10x tighter tolerances";
    }
    out.push_back(tight);
  }
  if (all || suite == "lemma1") out.push_back(lemma1_audit());
  if (all || suite == "first_line") out.push_back(first_line_audit());
  if (all || suite == "eta1") out.push_back(eta1());
  if (all || suite == "shift") {
    for (int k : {0, 1})
      for (double a : {0.3, 0.5, 1.0, 1.7}) out.push_back(shift_identity(k, a));
  }
  if (all || suite == "typography") {
    for (auto& r : typography_audits()) out.push_back(std::move(r));
  }
  if (all || suite == "matrix") {
    std::vector<HurwitzPoint> points;
    if (req.point_given)
      points.push_back(req.point);
    else
      points = {{0, 1.0}, {1, 1.0}, {0, 0.5}, {1, 0.5}};
    for (const auto& p : points) {
      const AgreementMatrix m = agreement_matrix(p);
      for (const auto& r : m.pairs) out.push_back(r);
    }
  }
  return out;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"corollary1", "lemma1", "first_line", "eta1",
                                                 "shift",      "typography", "matrix", "all"};
  return names;
}

}  // namespace detail

/// Parses argv and executes one command. Output goes to `out`, diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stieltjes constants gamma_n and gamma_n(a)", "stieltjes"};
  app.require_subcommand(1);
  Request req;
  std::string format = "json", method_list, blocks;
  double tol = 0;
  int k = 0;

  auto add_common = [&](CLI::App* s, bool with_method) {
    s->add_option("--n", req.point.n, "Stieltjes index n >= 0")->default_val(0);
    s->add_option("--a", req.point.a, "Hurwitz parameter a > 0")->default_val(1.0);
    s->add_option("--k", k, "Base or kernel parameter (method dependent)");
    s->add_option("--tol", tol, "Target accuracy (method default if absent)");
    s->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "plain"}));
    if (with_method) s->add_option("--method,--methods", method_list, "Method name, or a comma-separated list");
  };
  CLI::App* c_compute = app.add_subcommand("compute", "Evaluate one constant by one method");
  add_common(c_compute, true);
  CLI::App* c_compare = app.add_subcommand("compare", "Evaluate by several methods and compare pairwise");
  add_common(c_compare, true);
  CLI::App* c_audit = app.add_subcommand("audit", "Run identity audits");
  add_common(c_audit, false);
  c_audit->add_option("--suite", req.suite, "Suite name")->check(CLI::IsMember(detail::suite_names()));
  CLI::App* c_table = app.add_subcommand("table", "Per-block partial sums of a series method");
  add_common(c_table, true);
  c_table->add_option("--blocks", blocks, "Block range LO..HI")->required();
  CLI::App* c_methods = app.add_subcommand("methods", "List registered methods");
  c_methods->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "plain"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  if (sub == c_compute) req.command = Command::compute;
  if (sub == c_compare) req.command = Command::compare;
  if (sub == c_audit) req.command = Command::audit;
  if (sub == c_table) req.command = Command::table;
  if (sub == c_methods) req.command = Command::methods;
  req.format = format == "csv" ? Format::csv : format == "plain" ? Format::plain : Format::json;
  if (sub != c_methods && sub->count("--k")) req.k = k;
  if (sub != c_methods && sub->count("--tol")) {
    if (!(tol > 0) || !std::isfinite(tol)) {
      err << "stieltjes: --tol must be a positive number\n";
      return 2;
    }
    req.tol = tol;
  }
  if (sub != c_methods) req.point_given = sub->count("--n") > 0 || sub->count("--a") > 0;
  if (req.point.n < 0 || !(req.point.a > 0) || !std::isfinite(req.point.a)) {
    err << "stieltjes: need n >= 0 and a > 0\n";
    return 2;
  }
  for (std::stringstream ss(method_list); ss.good();) {
    std::string name;
    std::getline(ss, name, ',');
    if (!name.empty()) req.methods.push_back(name);
  }
  for (const auto& name : req.methods) {
    if (!find_method(name)) {
      err << "stieltjes: unknown method '" << name << "'. Valid methods: " << method_names() << '\n';
      return 2;
    }
  }

  std::ostringstream buf;
  int code = 0;
  try {
    switch (req.command) {
      case Command::methods: {
        if (req.format == Format::json) {
          nlohmann::ordered_json arr = nlohmann::ordered_json::array();
          for (const auto& m : registry())
            arr.push_back({{"name", m.name},
                           {"paper_eq", m.formula},
                           {"domain", m.domain},
                           {"default_tol", m.default_tol},
                           {"blocks", m.has_blocks}});
          buf << arr.dump(2) << '\n';
        } else if (req.format == Format::csv) {
          buf << "name,paper_eq,domain,default_tol\n";
          for (const auto& m : registry())
            buf << m.name << ',' << detail::csv_field(m.formula) << ',' << detail::csv_field(m.domain) << ','
                << detail::fmt17(m.default_tol) << '\n';
        } else {
          for (const auto& m : registry())
            buf << m.name << "  [" << m.domain << "]  tol " << m.default_tol << "  " << m.formula << '\n';
        }
        break;
      }
      case Command::compute: {
        if (req.methods.size() != 1) {
          err << "stieltjes: compute needs exactly one --method. Valid methods: " << method_names() << '\n';
          return 2;
        }
        const Computation c = compute(*find_method(req.methods.front()), req);
        if (!c.ok) {
          err << "stieltjes: " << c.message << '\n';
          code = 3;
        }
        if (req.format == Format::json) {
          buf << detail::to_json(c, req).dump(2) << '\n';
        } else if (req.format == Format::csv) {
          buf << "method,n,a,value,tail_bound,blocks_used,terms_used,elapsed_ms,status\n"
              << c.method->name << ',' << req.point.n << ',' << detail::fmt17(req.point.a) << ','
              << detail::fmt17(c.result.value) << ',' << detail::fmt17(c.result.tail_bound) << ','
              << c.result.blocks_used << ',' << c.result.terms_used << ',' << detail::fmt17(c.result.elapsed_ms())
              << ',' << c.status << '\n';
        } else {
          buf << c.method->name << " gamma_" << req.point.n << "(" << detail::fmt17(req.point.a)
              << ") = " << detail::fmt17(c.result.value) << "  +- " << detail::fmt17(c.result.tail_bound) << "  ("
              << c.result.blocks_used << " blocks, " << c.result.terms_used << " terms, "
              << detail::fmt17(c.result.elapsed_ms()) << " ms)" << (c.ok ? "" : "  NOT CONVERGED") << '\n';
        }
        break;
      }
      case Command::compare: {
        std::vector<const MethodInfo*> chosen;
        if (req.methods.empty()) {
          for (const auto& m : registry()) {
            try {
              m.check(req);
              chosen.push_back(&m);
            } catch (const unsupported&) {
            }
          }
        } else {
          for (const auto& name : req.methods) chosen.push_back(find_method(name));
        }
        if (chosen.size() < 2) {
          err << "stieltjes: compare needs at least two methods covering the point\n";
          return 2;
        }
        std::vector<Computation> runs;
        for (const auto* m : chosen) runs.push_back(compute(*m, req));
        std::vector<AuditReport> pairs;
        for (std::size_t i = 0; i < runs.size(); ++i)
          for (std::size_t j = i + 1; j < runs.size(); ++j) {
            const auto& x = runs[i];
            const auto& y = runs[j];
            AuditReport r = make_report(x.method->name + " vs " + y.method->name, x.result.value, y.result.value,
                                        x.result.tail_bound + y.result.tail_bound + tolerance_floor,
                                        {{"n", double(req.point.n)}, {"a", req.point.a}});
            if (r.verdict != Verdict::confirmed || !x.ok || !y.ok) r.verdict = Verdict::failed;
            if (r.verdict == Verdict::failed) code = 4;
            pairs.push_back(std::move(r));
          }
        if (req.format == Format::json) {
          nlohmann::ordered_json res = nlohmann::ordered_json::array();
          for (const auto& c : runs) res.push_back(detail::to_json(c, req));
          nlohmann::ordered_json pr = nlohmann::ordered_json::array();
          for (const auto& p : pairs) pr.push_back(detail::to_json(p));
          buf << nlohmann::ordered_json{{"n", req.point.n}, {"a", req.point.a}, {"results", res}, {"pairs", pr}}.dump(2)
              << '\n';
        } else {
          detail::write_reports(buf, pairs, req.format);
        }
        break;
      }
      case Command::audit: {
        const auto reports = detail::run_suite(req.suite, req);
        for (const auto& r : reports)
          if (r.verdict == Verdict::failed) code = 4;
        detail::write_reports(buf, reports, req.format);
        break;
      }
      case Command::table: {
        if (req.methods.size() != 1) {
          err << "stieltjes: table needs exactly one --method\n";
          return 2;
        }
        if (!detail::parse_range(blocks, req.block_lo, req.block_hi)) {
          err << "stieltjes: --blocks must look like LO..HI with 1 <= LO <= HI\n";
          return 2;
        }
        const MethodInfo& m = *find_method(req.methods.front());
        if (!m.has_blocks) {
          err << "stieltjes: method '" << m.name << "' has no block structure\n";
          return 2;
        }
        req.min_blocks = req.block_hi;
        const Computation c = compute(m, req);
        if (!c.ok) {
          err << "stieltjes: " << c.message << '\n';
          code = 3;
        }
        std::vector<BlockRecord> rows;
        for (const auto& b : c.result.trace)
          if (b.block >= req.block_lo && b.block <= req.block_hi) rows.push_back(b);
        if (req.format == Format::json) {
          nlohmann::ordered_json arr = nlohmann::ordered_json::array();
          for (const auto& b : rows)
            arr.push_back({{"block", b.block}, {"partial_value", b.partial_value}, {"block_magnitude", b.block_magnitude}});
          buf << nlohmann::ordered_json{{"method", m.name}, {"n", req.point.n}, {"a", req.point.a}, {"rows", arr}}.dump(2)
              << '\n';
        } else if (req.format == Format::csv) {
          buf << "block,partial_value,block_magnitude\n";
          for (const auto& b : rows)
            buf << b.block << ',' << detail::fmt17(b.partial_value) << ',' << detail::fmt17(b.block_magnitude) << '\n';
        } else {
          for (const auto& b : rows)
            buf << b.block << "  " << detail::fmt17(b.partial_value) << "  " << detail::fmt17(b.block_magnitude)
                << '\n';
        }
        break;
      }
    }
  } catch (const unsupported& e) {
    err << "stieltjes: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    err << "stieltjes: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "stieltjes: " << e.what() << '\n';
    return 3;
  }
  out << buf.str();
  out.flush();
  return code;
}

}  // namespace stieltjes::cli
