#pragma once

// Command layer behind the `stiefel` executable. Each command returns its
// exit code and output instead of printing, so tests drive it directly.
//
// Exit codes: 0 success / a theorem applies, 1 no theorem or a mismatch,
// 2 usage error or cap exceeded, 3 unsupported parameter regime.

#include "stiefel/chern_certificate.hpp"
#include "stiefel/json_io.hpp"
#include "stiefel/parallel.hpp"
#include "stiefel/serre_ss.hpp"
#include "stiefel/space_catalog.hpp"
#include "stiefel/verdict_engine.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace stiefel::cli {

enum class OutputFormat { json, markdown, csv };

inline OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::json;
  if (s == "markdown" || s == "md") return OutputFormat::markdown;
  if (s == "csv") return OutputFormat::csv;
  throw DomainError("unknown format " + s + " (json, markdown, csv)");
}

struct CommandResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

/// STIEFEL_WIDTH wraps markdown prose; STIEFEL_COLOR=1 colours pass/fail in markdown.
struct Environment {
  std::size_t width = 100;
  bool color = false;

  static Environment from_env() {
    Environment e;
    if (const char* w = std::getenv("STIEFEL_WIDTH")) {
      try {
        long v = std::stol(w);
        if (v >= 20) e.width = static_cast<std::size_t>(v);
      } catch (const std::exception&) {
      }
    }
    if (const char* c = std::getenv("STIEFEL_COLOR")) {
      std::string s = c;
      e.color = s == "1" || s == "always" || s == "true";
    }
    return e;
  }
};

struct Limits {
  std::int64_t verify_n_max = 7;
  std::int64_t verify_p_max = 43;
  std::int64_t max_degree_cap = 120;
};

namespace detail {

inline std::string wrap(const std::string& text, std::size_t width) {
  std::istringstream in(text);
  std::string word, line, out;
  while (in >> word) {
    if (!line.empty() && line.size() + 1 + word.size() > width) {
      out += line + "\n";
      line.clear();
    }
    line += (line.empty() ? "" : " ") + word;
  }
  return out + line;
}

inline std::string mark(bool pass, const Environment& env) {
  std::string s = pass ? "pass" : "FAIL";
  if (!env.color) return s;
  return (pass ? "\x1b[32m" : "\x1b[31m") + s + "\x1b[0m";
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

inline std::string csv_row(const std::vector<std::string>& fields) {
  std::string s;
  for (std::size_t i = 0; i < fields.size(); ++i) s += (i ? "," : "") + csv_field(fields[i]);
  return s + "\n";
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline std::string torsion_list(const ModuleStructure& m) {
  std::string s;
  for (std::size_t i = 0; i < m.torsion.size(); ++i) s += (i ? ";" : "") + std::to_string(m.torsion[i]);
  return s;
}

inline std::string witness_line(const BoundReport& r) {
  std::string s;
  for (const auto& [k, v] : r.witness) s += (s.empty() ? "" : ", ") + k + " = " + v;
  return s;
}

}  // namespace detail

// ---------------------------------------------------------------- cohomology

inline CommandResult cmd_cohomology(const SpaceDescriptor& s, std::int64_t p, OutputFormat fmt,
                                    std::optional<std::int64_t> top_degree, const Environment& env = {}) {
  auto ring = presentation(s, p);
  const std::int64_t top = top_degree.value_or(s.dimension() + 2);
  if (top < 0) throw DomainError("--top-degree must be non-negative");
  auto table = graded_table(*ring, top);
  CommandResult r;
  switch (fmt) {
    case OutputFormat::json: {
      Json j{{"schema_version", kSchemaVersion},
             {"space", to_json(s)},
             {"prime", p},
             {"dimension", s.dimension()},
             {"presentation", to_json(*ring)},
             {"top_degree", top},
             {"table", to_json(table)},
             {"poincare_polynomial", to_string(poincare_polynomial(table))}};
      r.out = detail::dump(j);
      break;
    }
    case OutputFormat::markdown: {
      std::string& o = r.out;
      o += "# H*(" + s.to_string() + "; Z_(" + std::to_string(p) + "))\n\n";
      o += detail::wrap(presentation_string(*ring), env.width) + "\n\n";
      if (!ring->notice().empty()) o += detail::wrap("Note: " + ring->notice(), env.width) + "\n\n";
      o += "| degree | module |\n|---:|---|\n";
      for (std::int64_t d = 0; d <= top; ++d) o += "| " + std::to_string(d) + " | " + table.at(d).to_string(p) + " |\n";
      o += "\nPoincare polynomial (free part): " + to_string(poincare_polynomial(table)) + "\n";
      break;
    }
    case OutputFormat::csv: {
      r.out = detail::csv_row({"degree", "free_rank", "torsion_exponents", "module"});
      for (std::int64_t d = 0; d <= top; ++d)
        r.out += detail::csv_row({std::to_string(d), std::to_string(table.at(d).free_rank),
                                  detail::torsion_list(table.at(d)), table.at(d).to_string(p)});
      break;
    }
  }
  return r;
}

// ------------------------------------------------------------------- verdict

inline CommandResult cmd_verdict(const SpaceDescriptor& s, std::int64_t p, OutputFormat fmt,
                                 const Environment& env = {}) {
  auto v = full_verdict(s, p);
  CommandResult r;
  r.exit_code = v.applies() ? 0 : 1;
  switch (fmt) {
    case OutputFormat::json:
      r.out = detail::dump(to_json(v));
      break;
    case OutputFormat::markdown: {
      std::string& o = r.out;
      o += "# " + s.to_string() + " at p = " + std::to_string(p) + "\n\n";
      o += "Theorem: " + v.theorem + (v.stable ? " (stable)" : "") + "\n\n";
      o += detail::wrap("Conclusion: " + v.conclusion_text, env.width) + "\n\n";
      o += "| hypothesis | formula | result | witness |\n|---|---|---|---|\n";
      for (const auto& h : v.hypotheses)
        o += "| " + h.name + " | " + h.formula + " | " + detail::mark(h.pass, env) + " | " + detail::witness_line(h) +
             " |\n";
      o += "\nEvaluated:";
      for (const auto& c : v.candidates) o += " " + c.id + "=" + (c.pass ? "pass" : "fail");
      o += "\n";
      for (const auto& n : v.notes) o += "\n" + detail::wrap("Note: " + n, env.width) + "\n";
      break;
    }
    case OutputFormat::csv: {
      r.out = detail::csv_row({"space", "p", "theorem", "stable", "conclusion", "hypothesis", "pass", "witness"});
      for (const auto& h : v.hypotheses)
        r.out += detail::csv_row({s.to_string(), std::to_string(p), v.theorem, v.stable ? "true" : "false",
                                  v.conclusion_text, h.name, h.pass ? "true" : "false", detail::witness_line(h)});
      break;
    }
  }
  return r;
}

// --------------------------------------------------------------- certificate

inline CommandResult cmd_certificate(const SpaceDescriptor& s, std::int64_t p, OutputFormat fmt,
                                     const Environment& env = {}) {
  auto c = stable_split_certificate(s, p);
  CommandResult r;
  r.exit_code = c.verdict ? 0 : 1;
  if (fmt == OutputFormat::json) {
    r.out = detail::dump(to_json(c));
    return r;
  }
  if (fmt == OutputFormat::csv) {
    r.out = detail::csv_row({"condition", "pass"});
    r.out += detail::csv_row({"1", c.condition1.pass ? "true" : "false"});
    r.out += detail::csv_row({"2", c.condition2.pass ? "true" : "false"});
    r.out += detail::csv_row({"3", c.condition3.pass ? "true" : "false"});
    r.out += detail::csv_row({"verdict", c.verdict ? "true" : "false"});
    return r;
  }
  std::string& o = r.out;
  o += "# Stable splitting certificate for " + s.to_string() + " at p = " + std::to_string(p) + "\n\n";
  o += "1. dim " + std::to_string(c.condition1.dimension) + " < " + std::to_string(c.condition1.bound) + ": " +
       detail::mark(c.condition1.pass, env) + "\n";
  o += "2. torsion-free cohomology: " + detail::mark(c.condition2.pass, env) + "\n";
  o += "3. integral Chern character: " + detail::mark(c.condition3.pass, env) + "\n\n";
  o += std::string("Verdict: ") + (c.verdict ? "splits stably" : "not certified") + "\n";
  if (c.outside_hypotheses) o += "\n" + detail::wrap(c.stamp, env.width) + "\n";
  return r;
}

// --------------------------------------------------------------------- model

inline CommandResult cmd_model(std::int64_t n, std::int64_t k, OutputFormat fmt) {
  auto mm = minimal_model(n, k);
  CommandResult r;
  Json d = Json::object();
  for (const auto& g : mm.algebra->generators()) {
    Element e = generator_element(mm.algebra, static_cast<std::size_t>(&g - mm.algebra->generators().data()));
    Element de = mm.d(e);
    std::string s;
    for (const auto& [m, c] : de.terms()) {
      std::string coeff = c == LocalScalar(1, 3) ? "" : c.to_string() + " ";
      s += (s.empty() ? "" : " + ") + coeff + monomial_string(*mm.algebra, m);
    }
    d[g.name] = s.empty() ? "0" : s;
  }
  if (fmt == OutputFormat::json) {
    Json gens = Json::array();
    for (const auto& g : mm.algebra->generators()) gens.push_back({{"name", g.name}, {"degree", g.degree}});
    r.out = detail::dump(Json{{"schema_version", kSchemaVersion},
                              {"n", n},
                              {"k", k},
                              {"label", mm.algebra->label()},
                              {"generators", gens},
                              {"differential", d}});
  } else if (fmt == OutputFormat::csv) {
    r.out = detail::csv_row({"generator", "degree", "differential"});
    for (const auto& g : mm.algebra->generators())
      r.out += detail::csv_row({g.name, std::to_string(g.degree), d[g.name].get<std::string>()});
  } else {
    r.out = "# " + mm.algebra->label() + "\n\n| generator | degree | d |\n|---|---:|---|\n";
    for (const auto& g : mm.algebra->generators())
      r.out += "| " + g.name + " | " + std::to_string(g.degree) + " | " + d[g.name].get<std::string>() + " |\n";
  }
  return r;
}

// -------------------------------------------------------------------- verify

struct VerifyRow {
  std::int64_t n = 0, k = 0, p = 3, dim = 0, truncation = 0;
  ComparisonReport report;
  bool vanishes_above_dim = true;
};

inline VerifyRow verify_point(std::int64_t n, std::int64_t k, std::int64_t p, std::optional<std::int64_t> max_degree,
                              std::optional<std::int64_t> perturb_degree) {
  VerifyRow row;
  row.n = n;
  row.k = k;
  row.p = p;
  row.dim = SpaceDescriptor::pw(n, k).dimension();
  row.truncation = max_degree.value_or(row.dim + 2);
  auto engine = run_pw_fibration(n, k, p, row.truncation);
  auto table = graded_table(*presentation(SpaceDescriptor::pw(n, k), p), row.truncation);
  if (perturb_degree) {
    std::int64_t d = std::clamp<std::int64_t>(*perturb_degree, 0, row.truncation);
    table.at(d).free_rank += 1;
  }
  row.report = compare_tables(engine, table);
  for (std::int64_t d = row.dim + 1; d <= engine.top_degree(); ++d)
    if (!engine.at(d).is_zero()) row.vanishes_above_dim = false;
  return row;
}

inline std::vector<std::string> verify_columns() {
  return {"n", "k", "p", "dim", "truncation", "status", "mismatches", "first_degree", "engine", "presentation",
          "engine_vanishes_above_dim"};
}

inline std::vector<std::string> verify_fields(const VerifyRow& r) {
  const auto* f = r.report.first_mismatch();
  return {std::to_string(r.n),
          std::to_string(r.k),
          std::to_string(r.p),
          std::to_string(r.dim),
          std::to_string(r.truncation),
          r.report.equal ? "match" : "mismatch",
          std::to_string(r.report.mismatches.size()),
          f ? std::to_string(f->degree) : "",
          f ? f->left.to_string(r.p) : "",
          f ? f->right.to_string(r.p) : "",
          r.vanishes_above_dim ? "true" : "false"};
}

inline CommandResult render_verify(const std::vector<VerifyRow>& rows, OutputFormat fmt, const Environment& env,
                                   const Json& header) {
  std::size_t bad = 0;
  for (const auto& r : rows) bad += r.report.equal ? 0 : 1;
  CommandResult res;
  res.exit_code = bad == 0 ? 0 : 1;
  const auto cols = verify_columns();
  switch (fmt) {
    case OutputFormat::csv:
      res.out = detail::csv_row(cols);
      for (const auto& r : rows) res.out += detail::csv_row(verify_fields(r));
      break;
    case OutputFormat::json: {
      Json j = header;
      j["points"] = rows.size();
      j["mismatched_points"] = bad;
      Json arr = Json::array();
      for (const auto& r : rows) {
        Json row = Json::object();
        auto fields = verify_fields(r);
        for (std::size_t i = 0; i < cols.size(); ++i) row[cols[i]] = fields[i];
        row["comparison"] = to_json(r.report, r.p);
        arr.push_back(std::move(row));
      }
      j["rows"] = arr;
      res.out = detail::dump(j);
      break;
    }
    case OutputFormat::markdown: {
      std::string& o = res.out;
      o += "| n | k | p | status | first mismatch |\n|---:|---:|---:|---|---|\n";
      for (const auto& r : rows) {
        const auto* f = r.report.first_mismatch();
        o += "| " + std::to_string(r.n) + " | " + std::to_string(r.k) + " | " + std::to_string(r.p) + " | " +
             detail::mark(r.report.equal, env) + " | " +
             (f ? "degree " + std::to_string(f->degree) + ": engine " + f->left.to_string(r.p) + ", presentation " +
                      f->right.to_string(r.p)
                : std::string()) +
             " |\n";
      }
      o += "\n" + std::to_string(rows.size()) + " points, " + std::to_string(bad) + " mismatched\n";
      break;
    }
  }
  if (bad > 0) res.err = std::to_string(bad) + " of " + std::to_string(rows.size()) + " points mismatched\n";
  return res;
}

struct VerifyGridOptions {
  std::int64_t n_max = 6;
  std::int64_t p_max = 13;
  std::optional<std::int64_t> perturb_degree;
  unsigned workers = 1;
};

inline CommandResult cmd_verify_grid(const VerifyGridOptions& opt, OutputFormat fmt, const Environment& env = {},
                                     const Limits& limits = {}) {
  if (opt.n_max < 2 || opt.p_max < 3) {
    CommandResult r;
    r.exit_code = 2;
    r.err = "verify --grid needs n-max >= 2 and p-max >= 3\n";
    return r;
  }
  if (opt.n_max > limits.verify_n_max || opt.p_max > limits.verify_p_max) {
    CommandResult r;
    r.exit_code = 2;
    r.err = "grid exceeds the safety cap (n-max <= " + std::to_string(limits.verify_n_max) +
            ", p-max <= " + std::to_string(limits.verify_p_max) + ")\n";
    return r;
  }
  struct Point {
    std::int64_t n, k, p;
  };
  std::vector<Point> pts;
  for (std::int64_t n = 2; n <= opt.n_max; ++n)
    for (std::int64_t k = 1; k <= n; ++k)
      for (std::int64_t p : odd_primes_between(3, opt.p_max)) pts.push_back({n, k, p});
  auto rows = parallel_map<VerifyRow>(pts.size(), opt.workers, [&](std::size_t i) {
    std::optional<std::int64_t> perturb;
    if (opt.perturb_degree) perturb = *opt.perturb_degree < 0 ? SpaceDescriptor::pw(pts[i].n, pts[i].k).dimension()
                                                              : *opt.perturb_degree;
    return verify_point(pts[i].n, pts[i].k, pts[i].p, std::nullopt, perturb);
  });
  Json header{{"schema_version", kSchemaVersion}, {"grid", {{"n_max", opt.n_max}, {"p_max", opt.p_max}}}};
  return render_verify(rows, fmt, env, header);
}

inline CommandResult cmd_verify_point(const SpaceDescriptor& s, std::int64_t p, std::optional<std::int64_t> max_degree,
                                      std::optional<std::int64_t> perturb_degree, bool trace, OutputFormat fmt,
                                      const Environment& env = {}, const Limits& limits = {}) {
  if (max_degree && *max_degree > limits.max_degree_cap) {
    CommandResult r;
    r.exit_code = 2;
    r.err = "--max-degree exceeds the safety cap " + std::to_string(limits.max_degree_cap) + "\n";
    return r;
  }
  const std::int64_t truncation = max_degree.value_or(s.dimension() + 2);
  if (s.kind == SpaceKind::PW) {
    if (trace) {
      CommandResult r;
      r.out = detail::dump(trace_json(run_pw_spectral_sequence(s.n, s.k, p, truncation)));
      return r;
    }
    std::optional<std::int64_t> perturb;
    if (perturb_degree) perturb = *perturb_degree < 0 ? s.dimension() : *perturb_degree;
    auto row = verify_point(s.n, s.k, p, truncation, perturb);
    Json header{{"schema_version", kSchemaVersion}, {"space", to_json(s)}};
    return render_verify({row}, fmt, env, header);
  }
  if (s.kind == SpaceKind::WM) {
    auto res = run_wm_fibration(s.n, s.k, s.m, p, truncation);
    if (trace) {
      CommandResult r;
      r.out = detail::dump(trace_json(res.ss));
      return r;
    }
    auto table = graded_table(*presentation(s, p), truncation);
    if (perturb_degree) table.at(std::clamp<std::int64_t>(*perturb_degree < 0 ? s.dimension() : *perturb_degree, 0,
                                                          truncation))
                            .free_rank += 1;
    auto rep = compare_tables(res.table, table);
    CommandResult r;
    r.exit_code = rep.equal ? 0 : 1;
    Json j{{"schema_version", kSchemaVersion},
           {"space", to_json(s)},
           {"prime", p},
           {"truncation", truncation},
           {"comparison", to_json(rep, p)},
           {"witness",
            {{"bidegree", {res.witness.s, res.witness.t}},
             {"module", res.witness_module.to_string(p)},
             {"is_e_times_x_power", res.witness_is_e_times_top_power}}}};
    if (fmt == OutputFormat::json) {
      r.out = detail::dump(j);
    } else if (fmt == OutputFormat::csv) {
      r.out = detail::csv_row({"space", "p", "status", "mismatches", "witness_module"});
      r.out += detail::csv_row({s.to_string(), std::to_string(p), rep.equal ? "match" : "mismatch",
                                std::to_string(rep.mismatches.size()), res.witness_module.to_string(p)});
    } else {
      r.out = s.to_string() + " at p = " + std::to_string(p) + ": " + detail::mark(rep.equal, env) +
              ", e x^" + std::to_string(s.n - s.k) + " survives as " + res.witness_module.to_string(p) + "\n";
    }
    return r;
  }
  if (s.kind == SpaceKind::PLW) {
    auto res = run_plw_spectral_sequence(s.n, s.k, s.l, p, truncation);
    if (trace) {
      CommandResult r;
      r.out = detail::dump(trace_json(res));
      return r;
    }
    auto table = graded_table(*presentation(s, p), truncation);
    auto rep = compare_tables(res.total, table);
    CommandResult r;
    r.exit_code = rep.equal ? 0 : 1;
    r.out = detail::dump(Json{{"schema_version", kSchemaVersion},
                              {"space", to_json(s)},
                              {"prime", p},
                              {"comparison", to_json(rep, p)}});
    return r;
  }
  throw DomainError("verify supports PW, P_l W and W_{n,k;m}");
}

// --------------------------------------------------------------------- table

struct TableOptions {
  SpaceKind kind = SpaceKind::PW;
  std::int64_t n_lo = 2, n_hi = 8;
  std::optional<std::pair<std::int64_t, std::int64_t>> k_range;
  std::vector<std::int64_t> primes{5, 7, 11, 13};
  std::optional<std::int64_t> m;  // W_{n,k;m}; defaults to p
  unsigned workers = 1;
};

struct TableRow {
  SpaceDescriptor space;
  std::int64_t p = 3;
  SplitVerdict verdict;
};

inline std::vector<std::string> table_columns() {
  return {"space", "n", "k", "m", "p", "dim", "theorem", "stable", "theorem_A_bound", "large_prime", "M_unsplit",
          "stable_range", "certificate"};
}

inline std::vector<std::string> table_fields(const TableRow& r) {
  const auto& s = r.space;
  auto bool_str = [](bool b) { return std::string(b ? "true" : "false"); };
  std::string cert = "n/a";
  if (s.kind == SpaceKind::PW) cert = bool_str(stable_split_certificate(s, r.p).verdict);
  return {to_string(s.kind),
          std::to_string(s.n),
          std::to_string(s.k),
          s.kind == SpaceKind::WM ? std::to_string(s.m) : "",
          std::to_string(r.p),
          std::to_string(s.dimension()),
          r.verdict.theorem,
          bool_str(r.verdict.stable),
          rational_string(theorem_A_bound(s.n, s.k)),
          bool_str(theorem_A_check(s.n, s.k, r.p).pass),
          bool_str(M_bound_check(s.n, s.k, r.p, MVariant::unsplit).pass),
          bool_str(stable_range_check(s.n, s.k, r.p).pass),
          cert};
}

inline CommandResult cmd_table(const TableOptions& opt, OutputFormat fmt, [[maybe_unused]] const Environment& env = {}) {
  if (opt.n_lo > opt.n_hi || opt.n_lo < 1 || opt.primes.empty()) throw DomainError("table ranges must be nonempty");
  if (opt.kind != SpaceKind::PW && opt.kind != SpaceKind::W && opt.kind != SpaceKind::WM)
    throw DomainError("table supports PW, W and WM");
  std::vector<std::int64_t> primes = opt.primes;
  for (auto p : primes) require_odd_prime(p);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  std::vector<std::pair<SpaceDescriptor, std::int64_t>> pts;
  for (std::int64_t n = opt.n_lo; n <= opt.n_hi; ++n) {
    std::int64_t k_lo = opt.k_range ? std::max<std::int64_t>(1, opt.k_range->first) : 1;
    std::int64_t k_hi = opt.k_range ? std::min(n, opt.k_range->second) : n;
    for (std::int64_t k = k_lo; k <= k_hi; ++k)
      for (auto p : primes) {
        SpaceDescriptor s = opt.kind == SpaceKind::PW  ? SpaceDescriptor::pw(n, k)
                            : opt.kind == SpaceKind::W ? SpaceDescriptor::w(n, k)
                                                       : SpaceDescriptor::wm(n, k, opt.m.value_or(p));
        pts.emplace_back(s, p);
      }
  }
  auto rows = parallel_map<std::vector<std::string>>(pts.size(), opt.workers, [&](std::size_t i) {
    TableRow row{pts[i].first, pts[i].second, full_verdict(pts[i].first, pts[i].second)};
    return table_fields(row);
  });
  const auto cols = table_columns();
  CommandResult r;
  switch (fmt) {
    case OutputFormat::csv:
      r.out = detail::csv_row(cols);
      for (const auto& row : rows) r.out += detail::csv_row(row);
      break;
    case OutputFormat::json: {
      Json arr = Json::array();
      for (const auto& row : rows) {
        Json j = Json::object();
        for (std::size_t c = 0; c < cols.size(); ++c) j[cols[c]] = row[c];
        arr.push_back(std::move(j));
      }
      r.out = detail::dump(Json{{"schema_version", kSchemaVersion}, {"columns", cols}, {"rows", arr}});
      break;
    }
    case OutputFormat::markdown: {
      std::string& o = r.out;
      o += "|";
      for (const auto& c : cols) o += " " + c + " |";
      o += "\n|";
      for (std::size_t c = 0; c < cols.size(); ++c) o += "---|";
      o += "\n";
      for (const auto& row : rows) {
        o += "|";
        for (const auto& f : row) o += " " + f + " |";
        o += "\n";
      }
      break;
    }
  }
  return r;
}

// ------------------------------------------------------------------ dispatch

namespace detail {

inline std::pair<std::int64_t, std::int64_t> parse_range(const std::string& s) {
  auto dots = s.find("..");
  try {
    if (dots != std::string::npos) return {std::stoll(s.substr(0, dots)), std::stoll(s.substr(dots + 2))};
    auto dash = s.find('-', 1);
    if (dash != std::string::npos) return {std::stoll(s.substr(0, dash)), std::stoll(s.substr(dash + 1))};
    auto v = std::stoll(s);
    return {v, v};
  } catch (const std::exception&) {
    throw DomainError("cannot read range '" + s + "' (use a..b)");
  }
}

struct SpaceOptions {
  std::string space = "PW";
  std::int64_t n = 0, k = 0, m = 0;
  std::vector<std::int64_t> l;
  std::int64_t p = 0;

  void attach(CLI::App* app, bool need_prime = true) {
    app->add_option("--space", space, "W, PW, PLW, WM, Y, CP")->capture_default_str();
    app->add_option("--n", n, "n")->required();
    app->add_option("--k", k, "k");
    app->add_option("--m", m, "m (for WM)");
    app->add_option("--l", l, "weights l_1,...,l_k (for PLW)")->delimiter(',');
    auto* o = app->add_option("--p", p, "odd prime");
    if (need_prime) o->required();
  }
  SpaceDescriptor descriptor() const {
    SpaceDescriptor s;
    s.kind = space_kind_from_string(space);
    s.n = n;
    s.k = k;
    s.m = m;
    s.l = l;
    s.validate();
    return s;
  }
};

}  // namespace detail

/// Parses argv-style arguments (without the program name) and runs the command.
inline CommandResult run_cli(const std::vector<std::string>& args, const Environment& env = Environment::from_env(),
                             const Limits& limits = {}) {
  CLI::App app{"Exact p-local cohomology and splitting verdicts for complex Stiefel manifolds and their quotients",
               "stiefel"};
  app.require_subcommand(1);
  std::map<const CLI::App*, std::string> formats;
  auto add_format = [&](CLI::App* sub, const std::string& def) {
    formats[sub] = def;
    sub->add_option("--format", formats[sub], "json, markdown or csv")->capture_default_str();
  };

  detail::SpaceOptions space;
  std::optional<std::int64_t> top_degree;
  auto* coh = app.add_subcommand("cohomology", "presentation and per-degree module table");
  space.attach(coh);
  coh->add_option("--top-degree", top_degree, "last degree shown (default: dimension + 2)");
  add_format(coh, "json");

  detail::SpaceOptions vspace;
  auto* ver = app.add_subcommand("verdict", "strongest splitting theorem that applies");
  vspace.attach(ver);
  add_format(ver, "json");

  detail::SpaceOptions cspace;
  auto* cert = app.add_subcommand("certificate", "stable splitting certificate for PW or PLW");
  cspace.attach(cert);
  add_format(cert, "json");

  std::int64_t model_n = 0, model_k = 0;
  auto* model = app.add_subcommand("model", "rational minimal model of PW_{n,k}");
  model->add_option("--n", model_n, "n")->required();
  model->add_option("--k", model_k, "k")->required();
  add_format(model, "markdown");

  std::vector<std::int64_t> grid;
  std::string vf_space;
  std::int64_t vf_n = 0, vf_k = 0, vf_m = 0, vf_p = 0;
  std::vector<std::int64_t> vf_l;
  std::optional<std::int64_t> max_degree;
  std::optional<std::int64_t> perturb;
  bool perturb_flag = false;
  bool trace = false;
  unsigned workers = default_workers();
  auto* verify = app.add_subcommand("verify", "compare the spectral-sequence engine with the presentations");
  verify->add_option("--grid", grid, "n-max p-max")->expected(2);
  verify->add_option("--space", vf_space, "single point: PW, PLW or WM");
  verify->add_option("--n", vf_n, "n");
  verify->add_option("--k", vf_k, "k");
  verify->add_option("--m", vf_m, "m");
  verify->add_option("--l", vf_l, "weights")->delimiter(',');
  verify->add_option("--p", vf_p, "odd prime");
  verify->add_option("--max-degree", max_degree, "truncation degree (default: dimension + 2)");
  verify->add_flag("--perturb", perturb_flag, "self-test: perturb the presentation table at the top degree");
  verify->add_option("--perturb-degree", perturb, "self-test: perturb the presentation table at this degree");
  verify->add_flag("--trace", trace, "print the per-page JSON trace of a single point");
  verify->add_option("--workers", workers, "grid worker threads");
  add_format(verify, "csv");

  std::string t_space = "PW", n_range = "2..8", k_range;
  std::vector<std::int64_t> p_set{5, 7, 11, 13};
  std::optional<std::int64_t> t_m;
  auto* table = app.add_subcommand("table", "verdict matrix over parameter ranges");
  table->add_option("--space", t_space, "PW, W or WM")->capture_default_str();
  table->add_option("--n-range", n_range, "a..b")->capture_default_str();
  table->add_option("--k-range", k_range, "a..b (default 1..n)");
  table->add_option("--p-set", p_set, "comma-separated primes")->delimiter(',');
  table->add_option("--m", t_m, "m for WM (default: p)");
  table->add_option("--workers", workers, "worker threads");
  add_format(table, "csv");

  CommandResult result;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    result.out = app.help();
    return result;
  } catch (const CLI::ParseError& e) {
    result.exit_code = 2;
    result.err = std::string(e.what()) + "\n\n" + app.help();
    return result;
  }

  try {
    std::string format;
    for (const auto* sub : app.get_subcommands()) format = formats.at(sub);
    const OutputFormat fmt = parse_format(format);
    if (*coh) return cmd_cohomology(space.descriptor(), space.p, fmt, top_degree, env);
    if (*ver) return cmd_verdict(vspace.descriptor(), vspace.p, fmt, env);
    if (*cert) return cmd_certificate(cspace.descriptor(), cspace.p, fmt, env);
    if (*model) return cmd_model(model_n, model_k, fmt);
    if (*verify) {
      std::optional<std::int64_t> pd = perturb;
      if (perturb_flag && !pd) pd = -1;
      if (!grid.empty()) {
        if (!vf_space.empty()) throw DomainError("use either --grid or --space, not both");
        return cmd_verify_grid({grid[0], grid[1], pd, workers}, fmt, env, limits);
      }
      if (vf_space.empty()) throw DomainError("verify needs --grid n-max p-max or a single --space point");
      SpaceDescriptor s;
      s.kind = space_kind_from_string(vf_space);
      s.n = vf_n;
      s.k = vf_k;
      s.m = vf_m;
      s.l = vf_l;
      s.validate();
      require_odd_prime(vf_p);
      return cmd_verify_point(s, vf_p, max_degree, pd, trace, fmt, env, limits);
    }
    if (*table) {
      TableOptions opt;
      opt.kind = space_kind_from_string(t_space);
      std::tie(opt.n_lo, opt.n_hi) = detail::parse_range(n_range);
      if (!k_range.empty()) opt.k_range = detail::parse_range(k_range);
      opt.primes = p_set;
      opt.m = t_m;
      opt.workers = workers;
      return cmd_table(opt, fmt, env);
    }
  } catch (const UnsupportedRegime& e) {
    result.exit_code = 3;
    result.err = std::string("unsupported parameter regime: ") + e.what() + "\n";
    return result;
  } catch (const UnsupportedIdeal& e) {
    result.exit_code = 3;
    result.err = std::string("unsupported parameter regime: ") + e.what() + "\n";
    return result;
  } catch (const DomainError& e) {
    result.exit_code = 2;
    result.err = std::string("error: ") + e.what() + "\n";
    return result;
  }
  result.exit_code = 2;
  result.err = app.help();
  return result;
}

}  // namespace stiefel::cli
