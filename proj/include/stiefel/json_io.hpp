#pragma once

// JSON encodings (schema_version 1) plus the text renderings derived from them.

#include "stiefel/chern_certificate.hpp"
#include "stiefel/graded_algebra.hpp"
#include "stiefel/serre_ss.hpp"
#include "stiefel/space_catalog.hpp"
#include "stiefel/verdict_engine.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace stiefel {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline std::string monomial_string(const RingPresentation& ring, const Monomial& m) {
  std::string s;
  auto append = [&](const std::string& part) { s += s.empty() ? part : " " + part; };
  for (std::size_t i = 0; i < ring.even_count(); ++i) {
    if (m.powers[i] == 0) continue;
    const auto& g = ring.even_generator_at(i);
    append(m.powers[i] == 1 ? g.name : g.name + "^" + std::to_string(m.powers[i]));
  }
  for (std::size_t i = 0; i < ring.odd_count(); ++i)
    if (m.exterior & (std::uint64_t{1} << i)) append(ring.odd_generator_at(i).name);
  return s.empty() ? "1" : s;
}

/// e.g. "Lambda(gamma_5) (x) Z_(7)[x] / (x^4, x^5)".
inline std::string presentation_string(const RingPresentation& ring) {
  std::vector<std::string> parts;
  std::string odd, even;
  for (std::size_t i = 0; i < ring.odd_count(); ++i) odd += (i ? ", " : "") + ring.odd_generator_at(i).name;
  for (std::size_t i = 0; i < ring.even_count(); ++i) even += (i ? ", " : "") + ring.even_generator_at(i).name;
  const std::string zp = "Z_(" + std::to_string(ring.prime()) + ")";
  std::string s;
  if (!odd.empty()) s = "Lambda(" + odd + ")";
  if (!even.empty()) s += (s.empty() ? "" : " (x) ") + zp + "[" + even + "]";
  if (s.empty()) s = zp;
  if (!ring.ideal().empty()) {
    s += " / (";
    for (std::size_t i = 0; i < ring.ideal().size(); ++i) {
      const auto& t = ring.ideal()[i];
      std::string c = t.coefficient == LocalScalar(1, ring.prime()) ? "" : t.coefficient.to_string() + " ";
      s += (i ? ", " : "") + c + monomial_string(ring, t.monomial);
    }
    s += ")";
  }
  return s;
}

inline Json to_json(const SpaceDescriptor& s) {
  Json j;
  j["space"] = to_string(s.kind);
  switch (s.kind) {
    case SpaceKind::Lens:
      j["m"] = s.m;
      j["k"] = s.k;
      j["spheres"] = s.spheres;
      break;
    case SpaceKind::SphereProduct:
      j["spheres"] = s.spheres;
      break;
    case SpaceKind::CP:
      j["n"] = s.n;
      break;
    default:
      j["n"] = s.n;
      j["k"] = s.k;
      if (s.kind == SpaceKind::PLW) j["l"] = s.l;
      if (s.kind == SpaceKind::WM) j["m"] = s.m;
  }
  j["label"] = s.to_string();
  return j;
}

inline SpaceDescriptor descriptor_from_json(const Json& j) {
  SpaceDescriptor s;
  s.kind = space_kind_from_string(j.at("space").get<std::string>());
  s.n = j.value("n", std::int64_t{0});
  s.k = j.value("k", std::int64_t{0});
  s.m = j.value("m", std::int64_t{0});
  if (j.contains("l")) s.l = j.at("l").get<std::vector<std::int64_t>>();
  if (j.contains("spheres")) s.spheres = j.at("spheres").get<std::vector<std::int64_t>>();
  s.validate();
  return s;
}

inline Json to_json(const ModuleStructure& m, std::int64_t p) {
  return Json{{"free_rank", m.free_rank}, {"torsion", m.torsion}, {"module", m.to_string(p)}};
}

inline Json to_json(const GradedModuleTable& t) {
  Json rows = Json::array();
  for (std::int64_t d = 0; d <= t.top_degree(); ++d) {
    Json row{{"degree", d}};
    row.update(to_json(t.at(d), t.prime));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json to_json(const RingPresentation& ring) {
  Json gens = Json::array();
  for (const auto& g : ring.generators())
    gens.push_back({{"name", g.name}, {"degree", g.degree}, {"parity", g.parity == Parity::odd ? "odd" : "even"}});
  Json rel = Json::array();
  for (const auto& t : ring.ideal())
    rel.push_back({{"coefficient", t.coefficient.to_string()}, {"monomial", monomial_string(ring, t.monomial)}});
  Json j{{"label", ring.label()}, {"rendered", presentation_string(ring)}, {"generators", gens}, {"relations", rel}};
  if (!ring.notice().empty()) j["notice"] = ring.notice();
  return j;
}

inline Json to_json(const BoundReport& r) {
  Json w = Json::object();
  for (const auto& [k, v] : r.witness) w[k] = v;
  return Json{{"name", r.name}, {"formula", r.formula}, {"pass", r.pass}, {"witness", w}};
}

inline Json to_json(const SplitVerdict& v) {
  Json hyps = Json::array();
  for (const auto& h : v.hypotheses) hyps.push_back(to_json(h));
  Json cands = Json::array();
  for (const auto& c : v.candidates) {
    Json ch = Json::array();
    for (const auto& h : c.hypotheses) ch.push_back(to_json(h));
    cands.push_back({{"id", c.id}, {"pass", c.pass}, {"hypotheses", ch}});
  }
  Json sup = Json::array();
  for (const auto& h : v.supporting) sup.push_back(to_json(h));
  return Json{{"schema_version", kSchemaVersion},
              {"space", to_json(v.space)},
              {"prime", v.p},
              {"theorem", v.theorem},
              {"applies", v.applies()},
              {"stable", v.stable},
              {"conclusion", v.conclusion ? to_json(*v.conclusion) : Json(nullptr)},
              {"conclusion_text", v.conclusion_text},
              {"hypotheses", hyps},
              {"candidates", cands},
              {"supporting", sup},
              {"notes", v.notes}};
}

inline Json to_json(const StableSplitCertificate& c) {
  Json scan = Json::array();
  for (const auto& e : c.condition2.ideal_scan)
    scan.push_back({{"j", e.j}, {"coefficient", e.coefficient.str()}, {"valuation", e.valuation.to_string()}});
  Json w2{{"checked_through", c.condition2.checked_through},
          {"table_torsion_free", c.condition2.table_torsion_free},
          {"ideal_scan", scan}};
  if (c.condition2.first_torsion_degree) w2["first_torsion_degree"] = *c.condition2.first_torsion_degree;
  if (c.condition2.first_nonunit_j) w2["first_nonunit_j"] = *c.condition2.first_nonunit_j;
  if (c.condition2.leading_symmetric_sum) {
    w2["h_leading"] = c.condition2.leading_symmetric_sum->str();
    w2["h_leading_unit"] = c.condition2.leading_sum_unit;
  }
  Json chern = Json::array();
  for (const auto& t : c.condition3.chern.terms)
    chern.push_back({{"i", t.i}, {"coefficient", t.coefficient.to_string()}, {"valuation", t.valuation.to_string()}});
  Json window = Json::array();
  for (const auto& e : c.condition3.window.entries) window.push_back({{"r", e.r}, {"valuation", e.valuation}});
  Json w3{{"chern_x", chern},
          {"chern_x_integral", c.condition3.chern.integral()},
          {"adams_window", window},
          {"adams_window_pass", c.condition3.window.pass},
          {"top_term_degree", c.condition3.window.top_term_degree},
          {"note", c.condition3.window.note}};
  Json conds = Json::array();
  conds.push_back({{"id", 1},
                   {"pass", c.condition1.pass},
                   {"witness",
                    {{"dim", c.condition1.dimension},
                     {"bound", c.condition1.bound},
                     {"chain_k_le_n_minus_1_n_lt_p", c.condition1.chain_applies}}}});
  conds.push_back({{"id", 2}, {"pass", c.condition2.pass}, {"witness", w2}});
  conds.push_back({{"id", 3}, {"pass", c.condition3.pass}, {"witness", w3}});
  Json j{{"schema_version", kSchemaVersion},
         {"space", to_json(c.space)},
         {"prime", c.p},
         {"conditions", conds},
         {"verdict", c.verdict}};
  if (c.outside_hypotheses) j["stamp"] = c.stamp;
  return j;
}

inline Json to_json(const ComparisonReport& r, std::int64_t p) {
  Json mm = Json::array();
  for (const auto& m : r.mismatches)
    mm.push_back({{"degree", m.degree}, {"left", m.left.to_string(p)}, {"right", m.right.to_string(p)}});
  return Json{{"equal", r.equal},
              {"truncation_differs", r.truncation_differs},
              {"compared_through", r.compared_through},
              {"mismatches", mm}};
}

/// Bigraded ranks per page, for debugging runs of the engine.
inline Json trace_json(const SSResult& res) {
  auto page_json = [&](const SSPage& page) {
    Json entries = Json::array();
    for (const auto& [b, e] : page.entries)
      entries.push_back({{"s", b.s}, {"t", b.t}, {"free_rank", e.module.free_rank}, {"torsion", e.module.torsion}});
    Json diffs = Json::array();
    for (const auto& d : page.differentials)
      if (d.nonzero)
        diffs.push_back({{"source", {d.source.s, d.source.t}}, {"target", {d.target.s, d.target.t}}});
    return Json{{"r", page.r}, {"entries", entries}, {"nonzero_differentials", diffs}};
  };
  Json pages = Json::array();
  for (const auto& pg : res.pages) pages.push_back(page_json(pg));
  Json einf = page_json(res.e_infinity);
  einf["r"] = "infinity";
  return Json{{"schema_version", kSchemaVersion},
              {"label", res.label},
              {"prime", res.prime},
              {"truncation", res.truncation},
              {"last_nonzero_differential", res.last_nonzero_differential},
              {"pages", pages},
              {"e_infinity", einf},
              {"total", to_json(res.total)}};
}

}  // namespace stiefel
