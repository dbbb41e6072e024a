#pragma once

// Graded-commutative algebras over Z_(p): exterior generators in odd degree,
// polynomial generators in even degree, modulo an ideal spanned by
// (scalar x monomial) terms.
//
// Because every ideal generator is a scalar multiple of a single monomial,
// the quotient splits monomial by monomial: a monomial m spans Z_(p)/(p^v)
// with v the least valuation among ideal coefficients whose monomial divides
// m. v = 0 kills m, v = +inf leaves it free.

#include "stiefel/graded_module.hpp"
#include "stiefel/plocal_arith.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace stiefel {

/// Raised when a presentation's ideal has a shape graded_table does not handle.
class UnsupportedIdeal : public DomainError {
 public:
  using DomainError::DomainError;
};

enum class Parity { even, odd };

struct Generator {
  std::string name;
  std::int64_t degree = 0;
  Parity parity = Parity::even;

  bool operator==(const Generator&) const = default;
};

inline Generator even_generator(std::string name, std::int64_t degree) {
  return {std::move(name), degree, Parity::even};
}
inline Generator odd_generator(std::string name, std::int64_t degree) {
  return {std::move(name), degree, Parity::odd};
}

/// Exterior part as a bit set over the presentation's odd generators (in
/// their listed order); polynomial part as exponents over its even ones.
struct Monomial {
  std::uint64_t exterior = 0;
  std::vector<std::int64_t> powers;

  auto operator<=>(const Monomial&) const = default;

  bool divides(const Monomial& o) const {
    if ((exterior & ~o.exterior) != 0) return false;
    for (std::size_t i = 0; i < powers.size(); ++i)
      if (powers[i] > o.powers[i]) return false;
    return true;
  }
};

struct IdealTerm {
  LocalScalar coefficient;
  Monomial monomial;

  bool operator==(const IdealTerm&) const = default;
};

class RingPresentation {
 public:
  enum class Bound { required, unchecked };

  RingPresentation(std::int64_t p, std::vector<Generator> generators, Bound bound = Bound::required)
      : p_(p), generators_(std::move(generators)), bound_(bound) {
    require_odd_prime(p_);
    std::set<std::string> seen;
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      const auto& g = generators_[i];
      if (!seen.insert(g.name).second) throw DomainError("duplicate generator name " + g.name);
      if (g.degree <= 0) throw DomainError("generator " + g.name + " must have positive degree");
      const bool odd_degree = g.degree % 2 != 0;
      if (odd_degree != (g.parity == Parity::odd))
        throw DomainError("generator " + g.name + ": parity does not match degree");
      (g.parity == Parity::odd ? odd_ : even_).push_back(i);
    }
    if (odd_.size() > 64) throw DomainError("at most 64 exterior generators are supported");
  }

  std::int64_t prime() const { return p_; }
  const std::vector<Generator>& generators() const { return generators_; }
  const std::vector<IdealTerm>& ideal() const { return ideal_; }
  std::size_t odd_count() const { return odd_.size(); }
  std::size_t even_count() const { return even_.size(); }
  const Generator& odd_generator_at(std::size_t i) const { return generators_[odd_[i]]; }
  const Generator& even_generator_at(std::size_t i) const { return generators_[even_[i]]; }

  /// Optional regime notice attached by builders (e.g. a reduction applied).
  const std::string& notice() const { return notice_; }
  void set_notice(std::string s) { notice_ = std::move(s); }
  const std::string& label() const { return label_; }
  void set_label(std::string s) { label_ = std::move(s); }

  Monomial one() const { return Monomial{0, std::vector<std::int64_t>(even_.size(), 0)}; }

  /// Monomial from exterior generator names and (even name, exponent) pairs.
  Monomial monomial(const std::vector<std::string>& odd_names,
                    const std::vector<std::pair<std::string, std::int64_t>>& even_powers = {}) const {
    Monomial m = one();
    for (const auto& name : odd_names) {
      auto i = odd_index(name);
      if (m.exterior & (std::uint64_t{1} << i)) throw DomainError("repeated exterior generator " + name);
      m.exterior |= std::uint64_t{1} << i;
    }
    for (const auto& [name, e] : even_powers) {
      if (e < 0) throw DomainError("negative exponent");
      m.powers[even_index(name)] += e;
    }
    return m;
  }

  /// Adds c * m to the ideal. Zero coefficients are rejected; rebuilding the
  /// bound check happens here, so presentations stay valid after each call.
  void add_relation(const LocalScalar& c, const Monomial& m) {
    if (c.is_zero()) throw DomainError("ideal coefficients must be nonzero");
    if (c.prime() != p_) throw DomainError("ideal coefficient localized at the wrong prime");
    if (!c.is_local()) throw DomainError("ideal coefficients must lie in Z_(p)");
    ideal_.push_back({c, m});
    check_bounded();
  }
  void add_relation(const BigInt& c, const Monomial& m) { add_relation(LocalScalar(c, p_), m); }

  /// Finishes construction; throws if a required bound is missing.
  void seal() {
    sealed_ = true;
    check_bounded();
  }

  std::int64_t degree(const Monomial& m) const {
    std::int64_t d = 0;
    for (std::size_t i = 0; i < odd_.size(); ++i)
      if (m.exterior & (std::uint64_t{1} << i)) d += generators_[odd_[i]].degree;
    for (std::size_t i = 0; i < even_.size(); ++i) d += m.powers[i] * generators_[even_[i]].degree;
    return d;
  }

  /// Order of the monomial's line in the quotient: 0 = killed, inf = free.
  Valuation order_valuation(const Monomial& m) const {
    Valuation best = Valuation::infinity();
    for (const auto& t : ideal_)
      if (t.monomial.divides(m)) best = std::min(best, t.coefficient.valuation());
    return best;
  }

  /// Every monomial of exact degree d (before reduction by the ideal).
  std::vector<Monomial> monomials_of_degree(std::int64_t d) const {
    std::vector<Monomial> out;
    if (d < 0) return out;
    const std::size_t n_odd = odd_.size();
    const std::uint64_t limit = n_odd == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_odd) - 1;
    for (std::uint64_t mask = 0;; ++mask) {
      std::int64_t odd_deg = 0;
      for (std::size_t i = 0; i < n_odd; ++i)
        if (mask & (std::uint64_t{1} << i)) odd_deg += generators_[odd_[i]].degree;
      if (odd_deg <= d) {
        Monomial m = one();
        m.exterior = mask;
        fill_even(m, 0, d - odd_deg, out);
      }
      if (mask == limit) break;
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Degreewise structure of the quotient in degrees 0..top_degree.
  GradedModuleTable graded_table(std::int64_t top_degree) const {
    check_supported_shape();
    GradedModuleTable t(p_, top_degree);
    for (std::int64_t d = 0; d <= top_degree; ++d) {
      for (const auto& m : monomials_of_degree(d)) {
        Valuation v = order_valuation(m);
        if (v.is_infinite())
          ++t.at(d).free_rank;
        else
          t.at(d).add_torsion(v.value());
      }
    }
    return t;
  }

  /// Ideal terms must be (scalar) x (power of one even generator) x (optional
  /// exterior monomial).
  void check_supported_shape() const {
    for (const auto& t : ideal_) {
      int evens = 0;
      for (auto e : t.monomial.powers)
        if (e > 0) ++evens;
      if (evens > 1) throw UnsupportedIdeal("ideal term mixes several polynomial generators");
    }
  }

  /// True iff every even generator has a pure-power ideal term; then the
  /// free part vanishes in high degrees.
  bool is_bounded() const {
    for (std::size_t i = 0; i < even_.size(); ++i) {
      bool ok = false;
      for (const auto& t : ideal_) {
        if (t.monomial.exterior != 0) continue;
        bool pure = true;
        for (std::size_t k = 0; k < even_.size(); ++k)
          if ((k == i) != (t.monomial.powers[k] > 0)) pure = false;
        if (pure) ok = true;
      }
      if (!ok) return false;
    }
    return true;
  }

  bool operator==(const RingPresentation& o) const {
    return p_ == o.p_ && generators_ == o.generators_ && ideal_ == o.ideal_;
  }

  std::size_t odd_index(const std::string& name) const {
    for (std::size_t i = 0; i < odd_.size(); ++i)
      if (generators_[odd_[i]].name == name) return i;
    throw DomainError("no exterior generator named " + name);
  }
  std::size_t even_index(const std::string& name) const {
    for (std::size_t i = 0; i < even_.size(); ++i)
      if (generators_[even_[i]].name == name) return i;
    throw DomainError("no polynomial generator named " + name);
  }

 private:
  void fill_even(Monomial& m, std::size_t idx, std::int64_t remaining, std::vector<Monomial>& out) const {
    if (idx == even_.size()) {
      if (remaining == 0) out.push_back(m);
      return;
    }
    const std::int64_t deg = generators_[even_[idx]].degree;
    for (std::int64_t e = 0; e * deg <= remaining; ++e) {
      m.powers[idx] = e;
      fill_even(m, idx + 1, remaining - e * deg, out);
    }
    m.powers[idx] = 0;
  }

  void check_bounded() const {
    if (sealed_ && bound_ == Bound::required && !is_bounded())
      throw DomainError("presentation is not degreewise finite: some polynomial generator has no power in the ideal");
  }

  std::int64_t p_;
  std::vector<Generator> generators_;
  std::vector<std::size_t> odd_;
  std::vector<std::size_t> even_;
  std::vector<IdealTerm> ideal_;
  Bound bound_;
  bool sealed_ = false;
  std::string notice_;
  std::string label_;
};

using PresentationPtr = std::shared_ptr<const RingPresentation>;

inline GradedModuleTable graded_table(const RingPresentation& p, std::int64_t top_degree) {
  return p.graded_table(top_degree);
}

namespace detail {

// Canonical representative of a/b in Z/p^v, in [0, p^v).
inline BigInt reduce_mod_prime_power(const LocalScalar& c, std::int64_t v) {
  BigInt mod = ipow(BigInt(c.prime()), v);
  // Inverse of the denominator modulo p^v by extended Euclid.
  BigInt a = c.denominator() % mod, b = mod, x0 = 1, x1 = 0;
  while (b != 0) {
    BigInt q = a / b;
    BigInt t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  BigInt r = (c.numerator() % mod) * (x0 % mod) % mod;
  if (r < 0) r += mod;
  return r;
}

// Koszul sign of moving b's exterior generators past a's: one transposition
// per pair (i in a, j in b) with i > j.
inline int koszul_sign(std::uint64_t a, std::uint64_t b) {
  int swaps = 0;
  while (b) {
    int j = std::countr_zero(b);
    b &= b - 1;
    std::uint64_t above = j == 63 ? 0 : (a >> (j + 1));
    swaps += std::popcount(above);
  }
  return (swaps % 2) ? -1 : 1;
}

}  // namespace detail

/// An element of a presented ring, kept in normal form: killed monomials are
/// dropped and torsion coefficients reduced into [0, p^v).
class Element {
 public:
  explicit Element(PresentationPtr ring) : ring_(std::move(ring)) {}
  Element(PresentationPtr ring, const Monomial& m) : ring_(std::move(ring)) {
    add_term(m, LocalScalar(1, ring_->prime()));
  }
  Element(PresentationPtr ring, const Monomial& m, const LocalScalar& c) : ring_(std::move(ring)) {
    add_term(m, c);
  }

  const RingPresentation& ring() const { return *ring_; }
  const PresentationPtr& ring_ptr() const { return ring_; }
  const std::map<Monomial, LocalScalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Degree if homogeneous, nullopt otherwise (or for zero).
  std::optional<std::int64_t> degree() const {
    std::optional<std::int64_t> d;
    for (const auto& [m, c] : terms_) {
      auto dm = ring_->degree(m);
      if (d && *d != dm) return std::nullopt;
      d = dm;
    }
    return d;
  }

  void add_term(const Monomial& m, const LocalScalar& c) {
    if (c.is_zero()) return;
    Valuation v = ring_->order_valuation(m);
    if (v == Valuation(0)) return;
    auto it = terms_.find(m);
    LocalScalar sum = it == terms_.end() ? c : it->second + c;
    if (v.is_finite()) sum = LocalScalar(detail::reduce_mod_prime_power(sum, v.value()), ring_->prime());
    if (sum.is_zero()) {
      if (it != terms_.end()) terms_.erase(it);
    } else if (it == terms_.end()) {
      terms_.emplace(m, sum);
    } else {
      it->second = sum;
    }
  }

  Element operator+(const Element& o) const {
    check_same(o);
    Element r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
  }
  Element operator-() const {
    Element r(ring_);
    for (const auto& [m, c] : terms_) r.add_term(m, -c);
    return r;
  }
  Element operator-(const Element& o) const { return *this + (-o); }
  Element scaled(const LocalScalar& s) const {
    Element r(ring_);
    for (const auto& [m, c] : terms_) r.add_term(m, c * s);
    return r;
  }

  bool operator==(const Element& o) const { return same_ring(o) && terms_ == o.terms_; }

  bool same_ring(const Element& o) const { return ring_ == o.ring_ || *ring_ == *o.ring_; }
  void check_same(const Element& o) const {
    if (!same_ring(o)) throw DomainError("elements belong to different presentations");
  }

 private:
  PresentationPtr ring_;
  std::map<Monomial, LocalScalar> terms_;
};

/// Product of two monomials with its Koszul sign; nullopt when an exterior
/// generator repeats.
inline std::optional<std::pair<int, Monomial>> multiply_monomials(const Monomial& a, const Monomial& b) {
  if (a.exterior & b.exterior) return std::nullopt;
  Monomial m = a;
  m.exterior |= b.exterior;
  for (std::size_t i = 0; i < m.powers.size(); ++i) m.powers[i] += b.powers[i];
  return std::make_pair(detail::koszul_sign(a.exterior, b.exterior), std::move(m));
}

inline Element multiply(const Element& a, const Element& b) {
  a.check_same(b);
  Element r(a.ring_ptr());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      auto prod = multiply_monomials(ma, mb);
      if (!prod) continue;
      LocalScalar c = ca * cb;
      r.add_term(prod->second, prod->first < 0 ? -c : c);
    }
  return r;
}

inline Element operator*(const Element& a, const Element& b) { return multiply(a, b); }

/// Factors of a monomial in canonical order: polynomial generators (with
/// multiplicity) first, then exterior generators by index. Generator indices
/// refer to RingPresentation::generators().
inline std::vector<std::size_t> factor_sequence(const RingPresentation& ring, const Monomial& m) {
  std::vector<std::size_t> out;
  const auto& gens = ring.generators();
  for (std::size_t i = 0; i < ring.even_count(); ++i) {
    std::size_t g = 0;
    while (gens[g].name != ring.even_generator_at(i).name) ++g;
    for (std::int64_t e = 0; e < m.powers[i]; ++e) out.push_back(g);
  }
  for (std::size_t i = 0; i < ring.odd_count(); ++i) {
    if (!(m.exterior & (std::uint64_t{1} << i))) continue;
    std::size_t g = 0;
    while (gens[g].name != ring.odd_generator_at(i).name) ++g;
    out.push_back(g);
  }
  return out;
}

inline Element generator_element(const PresentationPtr& ring, std::size_t g) {
  const auto& gen = ring->generators().at(g);
  if (gen.parity == Parity::odd) return Element(ring, ring->monomial({gen.name}));
  return Element(ring, ring->monomial({}, {{gen.name, 1}}));
}

/// Extends values on generators (by name; missing names map to zero) to the
/// derivation d(ab) = d(a) b + (-1)^|a| a d(b).
inline Element apply_derivation(const Element& a, const std::map<std::string, Element>& on_generators) {
  const PresentationPtr& ring = a.ring_ptr();
  Element out(ring);
  for (const auto& [m, c] : a.terms()) {
    auto factors = factor_sequence(*ring, m);
    std::int64_t prefix_degree = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const auto& gen = ring->generators()[factors[i]];
      auto it = on_generators.find(gen.name);
      if (it != on_generators.end() && !it->second.is_zero()) {
        Element term(ring, ring->one());
        for (std::size_t j = 0; j < i; ++j) term = term * generator_element(ring, factors[j]);
        term = term * it->second;
        for (std::size_t j = i + 1; j < factors.size(); ++j) term = term * generator_element(ring, factors[j]);
        LocalScalar s = prefix_degree % 2 ? -c : c;
        out = out + term.scaled(s);
      }
      prefix_degree += gen.degree;
    }
  }
  return out;
}

}  // namespace stiefel
