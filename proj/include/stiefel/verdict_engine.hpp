#pragma once

// Splitting verdicts for PW, P_l W, W and W_{n,k;m}. Every hypothesis is an
// exact integer or rational comparison; the bounds of the form p + n - sqrt(D)
// are compared by squaring.

#include "stiefel/chern_certificate.hpp"
#include "stiefel/plocal_arith.hpp"
#include "stiefel/space_catalog.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stiefel {

struct BoundReport {
  std::string name;
  std::string formula;
  /// Exact values behind the decision, in display order.
  std::vector<std::pair<std::string, std::string>> witness;
  bool pass = false;

  const std::string* find(const std::string& key) const {
    for (const auto& [k, v] : witness)
      if (k == key) return &v;
    return nullptr;
  }
};

inline std::string rational_string(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  return den == 1 ? num.str() : num.str() + "/" + den.str();
}

/// (2nk - k^2 - 1)/2 + k - n.
inline Rational theorem_A_bound(std::int64_t n, std::int64_t k) {
  if (k < 1 || k > n) throw DomainError("theorem_A_bound needs 1 <= k <= n");
  return Rational(2 * n * k - k * k - 1, 2) + Rational(k - n);
}

inline BoundReport theorem_A_check(std::int64_t n, std::int64_t k, std::int64_t p) {
  Rational b = theorem_A_bound(n, k);
  BoundReport r;
  r.name = "large-prime bound";
  r.formula = "p > (2nk - k^2 - 1)/2 + k - n";
  r.pass = Rational(p) > b;
  r.witness = {{"p", std::to_string(p)}, {"bound", rational_string(b)}};
  return r;
}

enum class MVariant { unsplit, retcp };

inline BigInt m_discriminant(std::int64_t n, std::int64_t p, MVariant v) {
  BigInt P = p, N = n;
  return v == MVariant::unsplit ? P * P + N * N - 4 * P + 2 : P * P + N * N - 2 * P + 1;
}

/// k <= min(n, p + n - sqrt(D)), decided as k <= n, p + n - k >= 0 and (p + n - k)^2 >= D.
inline BoundReport M_bound_check(std::int64_t n, std::int64_t k, std::int64_t p, MVariant variant) {
  require_odd_prime(p);
  if (n < 1) throw DomainError("M_bound_check needs n >= 1");
  const BigInt d = m_discriminant(n, p, variant);
  if (d < 0) throw std::logic_error("negative discriminant in M_bound_check");
  const BigInt a = BigInt(p) + n;
  const BigInt gap = a - k;
  BoundReport r;
  r.name = variant == MVariant::unsplit ? "M(n,p) bound" : "CP retraction bound";
  r.formula = variant == MVariant::unsplit ? "k <= min(n, p + n - sqrt(p^2 + n^2 - 4p + 2))"
                                           : "k <= min(n, p + n - sqrt(p^2 + n^2 - 2p + 1))";
  const bool min_clause = k <= n;
  const bool sign_clause = gap >= 0;
  const bool square_clause = gap * gap >= d;
  r.pass = min_clause && sign_clause && square_clause;
  r.witness = {{"k", std::to_string(k)},
               {"n", std::to_string(n)},
               {"p+n", a.str()},
               {"D", d.str()},
               {"(p+n-k)^2", BigInt(gap * gap).str()},
               {"k<=n", min_clause ? "true" : "false"}};
  return r;
}

/// The connectivity inequalities used to build maps to CP^{n-k} and to the sphere factors.
inline BoundReport stable_range_check(std::int64_t n, std::int64_t k, std::int64_t p) {
  if (k < 1 || k > n) throw DomainError("stable_range_check needs 1 <= k <= n");
  const std::int64_t dim = 2 * n * k - k * k - 1;
  BoundReport r;
  r.name = "stable range";
  r.formula = "dim - 1 <= 2(n-k)p + 2p - 3 and dim <= 2p(n-k+r) + 2p - 4 for 1 <= r <= k-1";
  const std::int64_t first = 2 * (n - k) * p + 2 * p - 3;
  r.pass = dim - 1 <= first;
  r.witness.push_back({"dim-1", std::to_string(dim - 1)});
  r.witness.push_back({"2(n-k)p+2p-3", std::to_string(first)});
  std::optional<std::int64_t> first_failure;
  for (std::int64_t s = 1; s <= k - 1; ++s) {
    const std::int64_t rhs = 2 * p * (n - k + s) + 2 * p - 4;
    r.witness.push_back({"r=" + std::to_string(s), std::to_string(dim) + " <= " + std::to_string(rhs)});
    if (dim > rhs) {
      r.pass = false;
      if (!first_failure) first_failure = s;
    }
  }
  if (first_failure) r.witness.push_back({"first failing r", std::to_string(*first_failure)});
  return r;
}

struct TheoremCandidate {
  std::string id;
  std::vector<BoundReport> hypotheses;
  bool pass = false;
};

struct SplitVerdict {
  SpaceDescriptor space;
  std::int64_t p = 3;
  std::string theorem;  // "none" when nothing applies
  std::vector<BoundReport> hypotheses;
  std::optional<SpaceDescriptor> conclusion;
  std::string conclusion_text;
  bool stable = false;
  std::vector<TheoremCandidate> candidates;  // in the order evaluated
  std::vector<BoundReport> supporting;       // informational, never gating
  std::vector<std::string> notes;

  bool applies() const { return conclusion.has_value(); }
};

namespace detail {

inline BoundReport simple_check(std::string name, std::string formula, bool pass,
                                std::vector<std::pair<std::string, std::string>> witness) {
  return BoundReport{std::move(name), std::move(formula), std::move(witness), pass};
}

inline BoundReport prime_above(std::int64_t p, std::int64_t floor_value, const std::string& label) {
  return simple_check("p > " + label, "p > " + label, p > floor_value,
                      {{"p", std::to_string(p)}, {label, std::to_string(floor_value)}});
}

inline BoundReport symmetric_sum_unit(const SpaceDescriptor& s, std::int64_t p) {
  BigInt h = complete_symmetric_sum(s.l, s.n - s.k + 1);
  return simple_check("p does not divide h_{n-k+1}(l)", "p does not divide sum_{|I|=n-k+1} l^I", h % p != 0,
                      {{"h_{n-k+1}(l)", h.str()}, {"p", std::to_string(p)}});
}

inline BoundReport divides_m(const SpaceDescriptor& s, std::int64_t p) {
  return simple_check("p divides m", "p | m", s.m % p == 0, {{"m", std::to_string(s.m)}, {"p", std::to_string(p)}});
}

inline std::vector<BoundReport> certificate_reports(const StableSplitCertificate& c) {
  std::vector<BoundReport> out;
  out.push_back(simple_check("certificate condition 1", "dim < 2p^2 - 2p", c.condition1.pass,
                             {{"dim", std::to_string(c.condition1.dimension)},
                              {"2p^2-2p", std::to_string(c.condition1.bound)}}));
  std::vector<std::pair<std::string, std::string>> w2{
      {"torsion-free through degree " + std::to_string(c.condition2.checked_through),
       c.condition2.table_torsion_free ? "true" : "false"}};
  if (c.condition2.first_torsion_degree)
    w2.push_back({"first torsion degree", std::to_string(*c.condition2.first_torsion_degree)});
  if (c.condition2.leading_symmetric_sum) w2.push_back({"h_{n-k+1}(l)", c.condition2.leading_symmetric_sum->str()});
  out.push_back(simple_check("certificate condition 2", "H*(X; Z_(p)) is free", c.condition2.pass, std::move(w2)));
  std::vector<std::pair<std::string, std::string>> w3{
      {"ch(x) integral", c.condition3.chern.integral() ? "true" : "false"},
      {"Adams window", c.condition3.window.pass ? "true" : "false"}};
  if (auto i = c.condition3.chern.first_nonintegral()) w3.push_back({"first non-integral 1/i!", std::to_string(*i)});
  if (c.condition3.window.first_failure)
    w3.push_back({"first r with p | m(r)", std::to_string(*c.condition3.window.first_failure)});
  out.push_back(simple_check("certificate condition 3", "Chern character integral", c.condition3.pass, std::move(w3)));
  return out;
}

inline TheoremCandidate candidate(std::string id, std::vector<BoundReport> hyps) {
  TheoremCandidate c{std::move(id), std::move(hyps), true};
  for (const auto& h : c.hypotheses) c.pass = c.pass && h.pass;
  return c;
}

}  // namespace detail

/// Evaluates the applicable theorems strongest first and reports the first
/// whose hypotheses all hold.
inline SplitVerdict full_verdict(const SpaceDescriptor& s, std::int64_t p) {
  s.validate();
  require_odd_prime(p);
  SplitVerdict v;
  v.space = s;
  v.p = p;
  const std::int64_t n = s.n, k = s.k;

  struct Plan {
    TheoremCandidate c;
    bool stable;
  };
  std::vector<Plan> plan;

  auto unstable_bounds = [&] {
    return std::vector<BoundReport>{detail::prime_above(p, n + 1, "n+1"), M_bound_check(n, k, p, MVariant::unsplit)};
  };

  switch (s.kind) {
    case SpaceKind::PW: {
      plan.push_back({detail::candidate("A-largepdec", {theorem_A_check(n, k, p)}), false});
      plan.push_back({detail::candidate("C-unsplit", unstable_bounds()), false});
      auto hyps = std::vector<BoundReport>{detail::prime_above(p, n, "n")};
      for (auto& r : detail::certificate_reports(stable_split_certificate(s, p))) hyps.push_back(std::move(r));
      plan.push_back({detail::candidate("B-projstsplit", std::move(hyps)), true});
      break;
    }
    case SpaceKind::PLW: {
      plan.push_back(
          {detail::candidate("A-ell", {theorem_A_check(n, k, p), detail::symmetric_sum_unit(s, p)}), false});
      auto c_hyps = unstable_bounds();
      c_hyps.push_back(detail::symmetric_sum_unit(s, p));
      plan.push_back({detail::candidate("splitquot-ell", std::move(c_hyps)), false});
      auto hyps = std::vector<BoundReport>{detail::prime_above(p, n, "n"), detail::symmetric_sum_unit(s, p)};
      try {
        for (auto& r : detail::certificate_reports(stable_split_certificate(s, p))) hyps.push_back(std::move(r));
      } catch (const UnsupportedRegime& e) {
        hyps.push_back(detail::simple_check("certificate", "cohomology presentation available", false,
                                            {{"reason", e.what()}}));
      }
      plan.push_back({detail::candidate("B-ell", std::move(hyps)), true});
      break;
    }
    case SpaceKind::W:
      plan.push_back({detail::candidate("eqsplitlarg", {theorem_A_check(n, k, p)}), false});
      plan.push_back({detail::candidate("eqstief", unstable_bounds()), false});
      break;
    case SpaceKind::WM: {
      plan.push_back({detail::candidate("wnklarg", {theorem_A_check(n, k, p)}), false});
      auto hyps = unstable_bounds();
      hyps.push_back(detail::divides_m(s, p));
      plan.push_back({detail::candidate("splitquot-WM", std::move(hyps)), false});
      break;
    }
    default:
      break;
  }

  for (const auto& step : plan) v.candidates.push_back(step.c);
  for (const auto& step : plan) {
    if (!step.c.pass) continue;
    v.theorem = step.c.id;
    v.hypotheses = step.c.hypotheses;
    v.stable = step.stable;
    v.conclusion = comparison_space(s);
    const std::string local = "_(" + std::to_string(p) + ")";
    if (step.stable)
      v.conclusion_text = "Sigma^inf (" + s.to_string() + ")" + local + " splits as a wedge of p-local spheres, stably equivalent to (" +
                          v.conclusion->to_string() + ")" + local;
    else
      v.conclusion_text = "(" + s.to_string() + ")" + local + " ~ [" + v.conclusion->to_string() + "]" + local;
    break;
  }
  if (!v.conclusion) {
    v.theorem = "none";
    v.conclusion_text = "no splitting theorem applies";
    for (const auto& c : v.candidates)
      for (const auto& h : c.hypotheses)
        if (!h.pass) v.hypotheses.push_back(h);
  }

  if (s.kind == SpaceKind::PW || s.kind == SpaceKind::PLW || s.kind == SpaceKind::W || s.kind == SpaceKind::WM) {
    v.supporting.push_back(M_bound_check(n, k, p, MVariant::retcp));
    v.supporting.push_back(stable_range_check(n, k, p));
  }
  if ((v.theorem == "A-largepdec" || v.theorem == "A-ell" || v.theorem == "eqsplitlarg" || v.theorem == "wnklarg") &&
      p <= n) {
    bool torsion = false;
    for (std::int64_t j = n - k + 1; j <= n; ++j)
      if (binomial(n, j) % p == 0) torsion = true;
    if (torsion)
      v.notes.push_back("the large-prime bound holds at p <= n here, although some C(n,j) with j > n-k is divisible by p");
  }
  if (s.kind == SpaceKind::WM && s.m % p != 0)
    v.notes.push_back("p does not divide m, so W_{n,k;m} and W_{n,k} agree p-locally");
  if (v.theorem == "none" && plan.empty()) v.notes.push_back("no splitting result concerns " + to_string(s.kind));
  return v;
}

}  // namespace stiefel
