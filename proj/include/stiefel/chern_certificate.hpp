#pragma once

// Numeric certificate for a p-local stable splitting into a wedge of spheres:
//   (1) dim X < 2p^2 - 2p,
//   (2) H*(X; Z_(p)) free,
//   (3) the Chern character is integral on the generators x and gamma_j.
// For (3) only the exactly computable parts are encoded: the coefficients of
// ch(x) = e^x - 1 truncated by x^{n-k+1} = 0, and the Adams denominators m(r)
// over the degree window where ch(gamma_j) can be nonzero.

#include "stiefel/graded_algebra.hpp"
#include "stiefel/plocal_arith.hpp"
#include "stiefel/space_catalog.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace stiefel {

struct ChernTerm {
  std::int64_t i = 0;  // power of x
  LocalScalar coefficient;  // 1/i!
  Valuation valuation;
};

struct ChernExpansion {
  std::int64_t n = 0, k = 0, p = 3;
  std::vector<ChernTerm> terms;  // i = 1..n-k

  bool integral() const {
    for (const auto& t : terms)
      if (t.valuation < Valuation(0)) return false;
    return true;
  }
  /// Smallest i with 1/i! outside Z_(p).
  std::optional<std::int64_t> first_nonintegral() const {
    for (const auto& t : terms)
      if (t.valuation < Valuation(0)) return t.i;
    return std::nullopt;
  }
};

inline ChernExpansion chern_x_expansion(std::int64_t n, std::int64_t k, std::int64_t p) {
  require_odd_prime(p);
  if (k < 0 || k > n) throw DomainError("chern_x_expansion needs 0 <= k <= n");
  ChernExpansion e{n, k, p, {}};
  for (std::int64_t i = 1; i <= n - k; ++i) {
    LocalScalar c(BigInt(1), factorial(i), p);
    e.terms.push_back({i, c, c.valuation()});
  }
  return e;
}

struct AdamsWindowEntry {
  std::int64_t r = 0;
  std::int64_t valuation = 0;  // v_p(m(r)) = floor(r / (p - 1))
};

struct GammaIntegralityWindow {
  std::int64_t n = 0, k = 0, p = 3;
  std::vector<AdamsWindowEntry> entries;  // r = 0..n-2
  bool pass = true;
  std::optional<std::int64_t> first_failure;
  bool p_equals_n = false;
  /// Degree of gamma_n x^{n-k}, the highest term ch(gamma_j) can involve.
  std::int64_t top_term_degree = 0;
  std::string note;
};

inline GammaIntegralityWindow gamma_integrality_window(std::int64_t n, std::int64_t k, std::int64_t p) {
  require_odd_prime(p);
  if (n < 1 || k < 1 || k > n) throw DomainError("gamma_integrality_window needs 1 <= k <= n");
  GammaIntegralityWindow w;
  w.n = n;
  w.k = k;
  w.p = p;
  w.top_term_degree = 2 * n - 1 + 2 * (n - k);
  for (std::int64_t r = 0; r < n - 1; ++r) {
    std::int64_t v = adams_m_valuation(r, p);
    w.entries.push_back({r, v});
    if (v != 0 && !w.first_failure) {
      w.first_failure = r;
      w.pass = false;
    }
  }
  w.p_equals_n = (p == n);
  w.note = "ch(gamma_j) is a rational combination of gamma_s x^t, top term gamma_" + std::to_string(n) + " x^" +
           std::to_string(n - k) + " in degree " + std::to_string(w.top_term_degree) +
           "; ch_{2(n-k)+1+2r}(gamma_j) = 0 for r >= n-1";
  if (w.p_equals_n) w.note += "; p = n: the window r < n-1 stops one short of the first p-divisible m(r)";
  return w;
}

struct IdealScanEntry {
  std::int64_t j = 0;
  BigInt coefficient;  // C(n,j), or h_j(l) for P_l W
  Valuation valuation;
};

struct DimensionCondition {
  std::int64_t dimension = 0;
  std::int64_t bound = 0;  // 2p^2 - 2p
  bool pass = false;
  /// dim < 2n(n-1) < 2p(p-1), recorded when p > n.
  bool chain_applies = false;
};

struct TorsionCondition {
  std::int64_t checked_through = 0;
  bool table_torsion_free = false;
  std::optional<std::int64_t> first_torsion_degree;
  std::vector<IdealScanEntry> ideal_scan;  // j = n-k+1..n
  std::optional<std::int64_t> first_nonunit_j;
  /// P_l W only: h_{n-k+1}(l) and whether p divides it.
  std::optional<BigInt> leading_symmetric_sum;
  bool leading_sum_unit = true;
  bool pass = false;
};

struct IntegralityCondition {
  ChernExpansion chern;
  GammaIntegralityWindow window;
  bool pass = false;
};

struct StableSplitCertificate {
  SpaceDescriptor space;
  std::int64_t p = 3;
  DimensionCondition condition1;
  TorsionCondition condition2;
  IntegralityCondition condition3;
  bool verdict = false;
  bool outside_hypotheses = false;  // p <= n
  std::string stamp;
};

inline StableSplitCertificate stable_split_certificate(const SpaceDescriptor& s, std::int64_t p) {
  if (s.kind != SpaceKind::PW && s.kind != SpaceKind::PLW)
    throw DomainError("stable_split_certificate applies to PW and P_l W only, not " + s.to_string());
  s.validate();
  require_odd_prime(p);
  const std::int64_t n = s.n, k = s.k;
  StableSplitCertificate cert;
  cert.space = s;
  cert.p = p;

  auto& c1 = cert.condition1;
  c1.dimension = s.dimension();
  c1.bound = 2 * p * p - 2 * p;
  c1.pass = c1.dimension < c1.bound;
  c1.chain_applies = p > n;

  auto& c2 = cert.condition2;
  c2.checked_through = c1.dimension;
  auto table = graded_table(*presentation(s, p), c1.dimension);
  c2.table_torsion_free = table.is_torsion_free();
  for (std::int64_t d = 0; d <= table.top_degree(); ++d)
    if (!table.at(d).is_free()) {
      c2.first_torsion_degree = d;
      break;
    }
  for (std::int64_t j = n - k + 1; j <= n; ++j) {
    BigInt c = s.kind == SpaceKind::PW ? binomial(n, j) : complete_symmetric_sum(s.l, j);
    Valuation v = valuation(c, p);
    c2.ideal_scan.push_back({j, c, v});
    if (v != Valuation(0) && !c2.first_nonunit_j) c2.first_nonunit_j = j;
  }
  if (s.kind == SpaceKind::PLW) {
    c2.leading_symmetric_sum = complete_symmetric_sum(s.l, n - k + 1);
    c2.leading_sum_unit = *c2.leading_symmetric_sum % p != 0;
  }
  c2.pass = c2.table_torsion_free && c2.leading_sum_unit;

  auto& c3 = cert.condition3;
  c3.chern = chern_x_expansion(n, k, p);
  c3.window = gamma_integrality_window(n, k, p);
  c3.pass = c3.chern.integral() && c3.window.pass;

  cert.verdict = c1.pass && c2.pass && c3.pass;
  cert.outside_hypotheses = p <= n;
  if (cert.outside_hypotheses) cert.stamp = "outside theorem hypotheses (the splitting theorem requires p > n)";
  return cert;
}

}  // namespace stiefel
