#pragma once

// Degreewise module data over Z_(p): a free rank plus cyclic torsion
// summands Z/p^v, recorded by their exponents v.

#include "stiefel/plocal_arith.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace stiefel {

struct ModuleStructure {
  std::int64_t free_rank = 0;
  std::vector<std::int64_t> torsion;  // exponents, ascending, all > 0

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  bool is_free() const { return torsion.empty(); }

  void add_torsion(std::int64_t v) {
    if (v <= 0) return;
    torsion.insert(std::upper_bound(torsion.begin(), torsion.end(), v), v);
  }
  ModuleStructure& operator+=(const ModuleStructure& o) {
    free_rank += o.free_rank;
    for (auto v : o.torsion) add_torsion(v);
    return *this;
  }
  bool operator==(const ModuleStructure&) const = default;

  /// e.g. "Z_(5)^2 + Z/5 + Z/25"; "0" for the zero module.
  std::string to_string(std::int64_t p) const {
    if (is_zero()) return "0";
    std::string s;
    auto sep = [&] {
      if (!s.empty()) s += " + ";
    };
    if (free_rank > 0) {
      s = "Z_(" + std::to_string(p) + ")";
      if (free_rank > 1) s += "^" + std::to_string(free_rank);
    }
    for (auto v : torsion) {
      sep();
      s += "Z/" + ipow(BigInt(p), v).str();
    }
    return s;
  }
};

/// Per-degree structure of a graded Z_(p)-module, degrees 0..top_degree().
struct GradedModuleTable {
  std::int64_t prime = 3;
  std::vector<ModuleStructure> degrees;

  GradedModuleTable() = default;
  GradedModuleTable(std::int64_t p, std::int64_t top) : prime(p), degrees(static_cast<std::size_t>(top + 1)) {}

  std::int64_t top_degree() const { return static_cast<std::int64_t>(degrees.size()) - 1; }
  ModuleStructure& at(std::int64_t d) { return degrees.at(static_cast<std::size_t>(d)); }
  const ModuleStructure& at(std::int64_t d) const { return degrees.at(static_cast<std::size_t>(d)); }

  /// Highest degree with a nonzero module, or -1.
  std::int64_t highest_nonzero_degree() const {
    for (std::int64_t d = top_degree(); d >= 0; --d)
      if (!at(d).is_zero()) return d;
    return -1;
  }
  bool is_torsion_free() const {
    return std::all_of(degrees.begin(), degrees.end(), [](const auto& m) { return m.is_free(); });
  }
  bool operator==(const GradedModuleTable&) const = default;
};

/// Integer polynomial in t, coefficient i of t^i.
using IntPolynomial = std::vector<std::int64_t>;

/// Free Betti numbers as a polynomial in t; torsion is not counted.
inline IntPolynomial poincare_polynomial(const GradedModuleTable& t) {
  IntPolynomial poly;
  for (std::int64_t d = 0; d <= t.top_degree(); ++d) poly.push_back(t.at(d).free_rank);
  while (!poly.empty() && poly.back() == 0) poly.pop_back();
  return poly;
}

inline IntPolynomial multiply(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.empty() || b.empty()) return {};
  IntPolynomial c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  while (!c.empty() && c.back() == 0) c.pop_back();
  return c;
}

inline std::int64_t evaluate(const IntPolynomial& poly, std::int64_t t) {
  std::int64_t acc = 0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * t + *it;
  return acc;
}

inline std::string to_string(const IntPolynomial& poly) {
  std::string s;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (poly[i] == 0) continue;
    if (!s.empty()) s += " + ";
    if (poly[i] != 1 || i == 0) s += std::to_string(poly[i]);
    if (i == 1) s += "t";
    if (i > 1) s += "t^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

/// Kunneth formula over Z_(p):
///   H^n(A x B) = sum_{i+j=n} A^i (x) B^j  +  sum_{i+j=n+1} Tor(A^i, B^j).
inline GradedModuleTable kunneth(const GradedModuleTable& a, const GradedModuleTable& b) {
  if (a.prime != b.prime) throw DomainError("kunneth: tables at different primes");
  GradedModuleTable out(a.prime, a.top_degree() + b.top_degree());
  for (std::int64_t i = 0; i <= a.top_degree(); ++i) {
    for (std::int64_t j = 0; j <= b.top_degree(); ++j) {
      const auto& ma = a.at(i);
      const auto& mb = b.at(j);
      auto& tensor = out.at(i + j);
      tensor.free_rank += ma.free_rank * mb.free_rank;
      for (auto v : ma.torsion)
        for (std::int64_t c = 0; c < mb.free_rank; ++c) tensor.add_torsion(v);
      for (auto v : mb.torsion)
        for (std::int64_t c = 0; c < ma.free_rank; ++c) tensor.add_torsion(v);
      for (auto va : ma.torsion)
        for (auto vb : mb.torsion) {
          tensor.add_torsion(std::min(va, vb));
          if (i + j >= 1) out.at(i + j - 1).add_torsion(std::min(va, vb));
        }
    }
  }
  return out;
}

}  // namespace stiefel
