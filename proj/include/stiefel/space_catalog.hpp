#pragma once

// Descriptors and closed-form cohomology presentations for complex Stiefel
// manifolds W_{n,k}, their circle quotients PW_{n,k} and P_l W_{n,k}, cyclic
// quotients W_{n,k;m}, and the model spaces they are compared against.

#include "stiefel/graded_algebra.hpp"
#include "stiefel/plocal_arith.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

namespace stiefel {

/// Raised for parameter regimes where no closed form is built.
class UnsupportedRegime : public DomainError {
 public:
  using DomainError::DomainError;
};

enum class SpaceKind { W, PW, PLW, WM, Y, Lens, SphereProduct, CP };

inline std::string to_string(SpaceKind k) {
  switch (k) {
    case SpaceKind::W: return "W";
    case SpaceKind::PW: return "PW";
    case SpaceKind::PLW: return "PLW";
    case SpaceKind::WM: return "WM";
    case SpaceKind::Y: return "Y";
    case SpaceKind::Lens: return "Lens";
    case SpaceKind::SphereProduct: return "SphereProduct";
    case SpaceKind::CP: return "CP";
  }
  return "?";
}

inline SpaceKind space_kind_from_string(const std::string& s) {
  for (auto k : {SpaceKind::W, SpaceKind::PW, SpaceKind::PLW, SpaceKind::WM, SpaceKind::Y, SpaceKind::Lens,
                 SpaceKind::SphereProduct, SpaceKind::CP})
    if (to_string(k) == s) return k;
  throw DomainError("unknown space kind '" + s + "'");
}

/// One of the spaces the engine knows. Field use by kind:
///   W, PW, Y      n, k
///   PLW           n, k, l (k entries, gcd 1)
///   WM            n, k, m
///   Lens          m, k  (the lens space L_m(2k+1)), spheres = extra factors
///   SphereProduct spheres (odd dimensions)
///   CP            n
struct SpaceDescriptor {
  SpaceKind kind = SpaceKind::PW;
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::vector<std::int64_t> l;
  std::int64_t m = 0;
  std::vector<std::int64_t> spheres;

  static SpaceDescriptor w(std::int64_t n, std::int64_t k) { return {SpaceKind::W, n, k, {}, 0, {}}; }
  static SpaceDescriptor pw(std::int64_t n, std::int64_t k) { return {SpaceKind::PW, n, k, {}, 0, {}}; }
  static SpaceDescriptor plw(std::int64_t n, std::int64_t k, std::vector<std::int64_t> l) {
    return {SpaceKind::PLW, n, k, std::move(l), 0, {}};
  }
  static SpaceDescriptor wm(std::int64_t n, std::int64_t k, std::int64_t m) { return {SpaceKind::WM, n, k, {}, m, {}}; }
  static SpaceDescriptor y(std::int64_t n, std::int64_t k) { return {SpaceKind::Y, n, k, {}, 0, {}}; }
  static SpaceDescriptor lens(std::int64_t m, std::int64_t k, std::vector<std::int64_t> extra = {}) {
    return {SpaceKind::Lens, 0, k, {}, m, std::move(extra)};
  }
  static SpaceDescriptor sphere_product(std::vector<std::int64_t> dims) {
    return {SpaceKind::SphereProduct, 0, 0, {}, 0, std::move(dims)};
  }
  static SpaceDescriptor cp(std::int64_t n) { return {SpaceKind::CP, n, 0, {}, 0, {}}; }

  bool operator==(const SpaceDescriptor&) const = default;

  void validate() const {
    auto need = [](bool ok, const std::string& msg) {
      if (!ok) throw DomainError(msg);
    };
    switch (kind) {
      case SpaceKind::W:
      case SpaceKind::PW:
      case SpaceKind::Y:
        need(1 <= k && k <= n, "need 1 <= k <= n");
        break;
      case SpaceKind::PLW:
        need(1 <= k && k <= n, "need 1 <= k <= n");
        need(static_cast<std::int64_t>(l.size()) == k, "l must have exactly k entries");
        need(gcd_of(l) == 1, "the entries of l must have gcd 1");
        break;
      case SpaceKind::WM:
        need(1 <= k && k <= n, "need 1 <= k <= n");
        need(m >= 2, "need m >= 2");
        break;
      case SpaceKind::Lens:
        need(m >= 2, "need m >= 2");
        need(k >= 0, "need k >= 0 for L_m(2k+1)");
        break;
      case SpaceKind::CP:
        need(n >= 0, "need n >= 0");
        break;
      case SpaceKind::SphereProduct:
        break;
    }
    for (auto d : spheres) need(d > 0 && d % 2 == 1, "sphere factors must have odd dimension");
  }

  /// Real dimension of the manifold.
  std::int64_t dimension() const {
    validate();
    std::int64_t extra = std::accumulate(spheres.begin(), spheres.end(), std::int64_t{0});
    switch (kind) {
      case SpaceKind::PW:
      case SpaceKind::PLW:
      case SpaceKind::Y:
        return 2 * n * k - k * k - 1;
      case SpaceKind::W:
      case SpaceKind::WM:
        return 2 * n * k - k * k;
      case SpaceKind::Lens:
        return 2 * k + 1 + extra;
      case SpaceKind::SphereProduct:
        return extra;
      case SpaceKind::CP:
        return 2 * n;
    }
    return 0;
  }

  /// Human-readable name, e.g. "PW_{5,2}" or "CP^3 x S^9".
  std::string to_string() const {
    auto spheres_suffix = [](const std::vector<std::int64_t>& dims, bool leading) {
      std::string s;
      for (std::size_t i = 0; i < dims.size(); ++i) {
        if (leading || i > 0) s += " x ";
        s += "S^" + std::to_string(dims[i]);
      }
      return s;
    };
    const std::string nk = std::to_string(n) + "," + std::to_string(k);
    switch (kind) {
      case SpaceKind::W: return "W_{" + nk + "}";
      case SpaceKind::PW: return "PW_{" + nk + "}";
      case SpaceKind::PLW: {
        std::string s = "P_(";
        for (std::size_t i = 0; i < l.size(); ++i) s += (i ? "," : "") + std::to_string(l[i]);
        return s + ")W_{" + nk + "}";
      }
      case SpaceKind::WM: return "W_{" + nk + ";" + std::to_string(m) + "}";
      case SpaceKind::Y: {
        std::vector<std::int64_t> dims;
        for (std::int64_t j = n - k + 2; j <= n; ++j) dims.push_back(2 * j - 1);
        return "CP^" + std::to_string(n - k) + spheres_suffix(dims, true);
      }
      case SpaceKind::Lens:
        return "L_" + std::to_string(m) + "(" + std::to_string(2 * k + 1) + ")" + spheres_suffix(spheres, true);
      case SpaceKind::SphereProduct:
        return spheres.empty() ? "pt" : spheres_suffix(spheres, false);
      case SpaceKind::CP: return "CP^" + std::to_string(n);
    }
    return "?";
  }
};

namespace detail {

inline std::string indexed(const std::string& base, std::int64_t j) { return base + "_" + std::to_string(j); }

// Z_(p)[x]/(c_j x^j) (x) Lambda(odd generators), the common shape of the
// circle quotients.
inline std::shared_ptr<RingPresentation> truncated_with_exterior(
    std::int64_t p, const std::vector<Generator>& odd, const std::vector<std::pair<std::int64_t, BigInt>>& x_ideal) {
  std::vector<Generator> gens{even_generator("x", 2)};
  gens.insert(gens.end(), odd.begin(), odd.end());
  auto r = std::make_shared<RingPresentation>(p, std::move(gens));
  for (const auto& [j, c] : x_ideal)
    if (c != 0) r->add_relation(LocalScalar(abs(c), p), r->monomial({}, {{"x", j}}));
  return r;
}

inline std::vector<Generator> odd_range(const std::string& base, std::int64_t lo, std::int64_t hi) {
  std::vector<Generator> out;
  for (std::int64_t j = lo; j <= hi; ++j) out.push_back(odd_generator(indexed(base, j), 2 * j - 1));
  return out;
}

inline std::vector<Generator> sphere_generators(const std::vector<std::int64_t>& dims) {
  std::vector<Generator> out;
  for (std::size_t i = 0; i < dims.size(); ++i)
    out.push_back(odd_generator("s" + std::to_string(i + 1) + "_" + std::to_string(dims[i]), dims[i]));
  return out;
}

}  // namespace detail

/// Closed-form cohomology presentation of `s` over Z_(p).
///
///   W_{n,k}    Lambda(z_{n-k+1}, ..., z_n), |z_j| = 2j-1
///   PW_{n,k}   Lambda(gamma_{n-k+2..n}) (x) Z_(p)[x]/(C(n,j) x^j : n-k+1 <= j <= n)
///   P_lW_{n,k} same with h_j(l) in place of C(n,j) (sign dropped: a unit)
///   W_{n,k;m}  (Lambda(gamma_{n-k+1..n}) (x) Z_(p)[x])/(m x, x^{n-k+1}, gamma_{n-k+1} x), p > n, p | m
inline PresentationPtr presentation(const SpaceDescriptor& s, std::int64_t p) {
  require_odd_prime(p);
  s.validate();
  const std::int64_t n = s.n, k = s.k, base = n - k + 1;
  std::shared_ptr<RingPresentation> r;
  switch (s.kind) {
    case SpaceKind::W:
      r = std::make_shared<RingPresentation>(p, detail::odd_range("z", base, n));
      break;
    case SpaceKind::PW: {
      std::vector<std::pair<std::int64_t, BigInt>> ideal;
      for (std::int64_t j = base; j <= n; ++j) ideal.emplace_back(j, binomial(n, j));
      r = detail::truncated_with_exterior(p, detail::odd_range("gamma", base + 1, n), ideal);
      break;
    }
    case SpaceKind::PLW: {
      std::vector<std::pair<std::int64_t, BigInt>> ideal;
      for (std::int64_t j = base; j <= n; ++j) ideal.emplace_back(j, complete_symmetric_sum(s.l, j));
      r = detail::truncated_with_exterior(p, detail::odd_range("gamma", base + 1, n), ideal);
      if (!r->is_bounded())
        throw UnsupportedRegime("every h_j(l), n-k < j <= n, vanishes: the presentation is not finite");
      break;
    }
    case SpaceKind::WM: {
      if (s.m % p != 0) {
        r = std::make_shared<RingPresentation>(p, detail::odd_range("z", base, n));
        r->set_notice("p does not divide m: W_{n,k;m} has the Z_(p)-cohomology of W_{n,k}");
        break;
      }
      if (p <= n)
        throw UnsupportedRegime("W_{n,k;m} with p | m is only presented for p > n (p = " + std::to_string(p) +
                                ", n = " + std::to_string(n) + ")");
      r = detail::truncated_with_exterior(p, detail::odd_range("gamma", base, n), {{1, BigInt(s.m)}, {base, 1}});
      r->add_relation(BigInt(1), r->monomial({detail::indexed("gamma", base)}, {{"x", 1}}));
      break;
    }
    case SpaceKind::Y: {
      std::vector<std::int64_t> dims;
      for (std::int64_t j = base + 1; j <= n; ++j) dims.push_back(2 * j - 1);
      r = detail::truncated_with_exterior(p, detail::sphere_generators(dims), {{base, 1}});
      break;
    }
    case SpaceKind::CP:
      r = detail::truncated_with_exterior(p, {}, {{s.n + 1, 1}});
      break;
    case SpaceKind::SphereProduct:
      r = std::make_shared<RingPresentation>(p, detail::sphere_generators(s.spheres));
      break;
    case SpaceKind::Lens: {
      // Z_(p)[x]/(m x, x^{k+1}) (x) Lambda(e) with e x = 0, |e| = 2k+1: the
      // shape W_{n,k;m} takes at k = 1.
      auto odd = detail::sphere_generators(s.spheres);
      odd.insert(odd.begin(), odd_generator("e", 2 * s.k + 1));
      r = detail::truncated_with_exterior(p, odd, {{1, BigInt(s.m)}, {s.k + 1, 1}});
      r->add_relation(BigInt(1), r->monomial({"e"}, {{"x", 1}}));
      break;
    }
  }
  r->set_label(s.to_string());
  r->seal();
  return r;
}

/// The product space the splitting results compare `s` with.
inline SpaceDescriptor comparison_space(const SpaceDescriptor& s) {
  s.validate();
  const std::int64_t n = s.n, k = s.k;
  switch (s.kind) {
    case SpaceKind::PW:
    case SpaceKind::PLW:
      return SpaceDescriptor::y(n, k);
    case SpaceKind::WM: {
      std::vector<std::int64_t> dims;
      for (std::int64_t j = n - k + 2; j <= n; ++j) dims.push_back(2 * j - 1);
      return SpaceDescriptor::lens(s.m, n - k, dims);
    }
    case SpaceKind::W: {
      std::vector<std::int64_t> dims;
      for (std::int64_t j = n - k + 1; j <= n; ++j) dims.push_back(2 * j - 1);
      return SpaceDescriptor::sphere_product(dims);
    }
    default:
      throw DomainError("no comparison space for " + s.to_string());
  }
}

/// Exact data behind the cohomology generators gamma_j of PW_{n,k}:
/// rho_j = u_j - x^{j-(n-k+1)} (mu_j / mu_{n-k+1}) u_{n-k+1}, mu_j = C(n,j).
struct GeneratorLedger {
  struct Rho {
    std::int64_t j = 0;
    BigInt mu;             // C(n, j)
    LocalScalar ratio;     // mu_j / mu_{n-k+1}
    std::int64_t x_power = 0;
    bool in_local_ring = false;
  };

  std::int64_t n = 0, k = 0, p = 3;
  BigInt mu_base;          // C(n, n-k+1)
  bool defined = false;    // v_p(mu_base) == 0
  std::vector<std::string> symbols;
  std::vector<Rho> rho;
};

inline GeneratorLedger generator_ledger(std::int64_t n, std::int64_t k, std::int64_t p) {
  require_odd_prime(p);
  SpaceDescriptor::pw(n, k).validate();
  GeneratorLedger g;
  g.n = n;
  g.k = k;
  g.p = p;
  const std::int64_t base = n - k + 1;
  g.mu_base = binomial(n, base);
  g.defined = valuation(g.mu_base, p) == Valuation(0);
  g.symbols.push_back("x");
  for (std::int64_t j = base + 1; j <= n; ++j) g.symbols.push_back(detail::indexed("gamma", j));
  for (std::int64_t j = base; j <= n; ++j) g.symbols.push_back(detail::indexed("u", j));
  for (std::int64_t j = base + 1; j <= n; ++j) {
    GeneratorLedger::Rho r;
    r.j = j;
    r.mu = binomial(n, j);
    r.ratio = LocalScalar(r.mu, g.mu_base, p);
    r.x_power = j - base;
    r.in_local_ring = r.ratio.is_local();
    g.rho.push_back(std::move(r));
  }
  return g;
}

/// Sullivan minimal model P(x~) (x) Lambda(y~_{n-k+1}, ..., y~_n) with
/// d(y~_{n-k+1}) = x~^{n-k+1} and every other generator closed.
struct MinimalModel {
  std::int64_t n = 0, k = 0;
  PresentationPtr algebra;
  std::map<std::string, Element> differential;  // nonzero values only

  Element d(const Element& a) const { return apply_derivation(a, differential); }
};

inline MinimalModel minimal_model(std::int64_t n, std::int64_t k) {
  SpaceDescriptor::pw(n, k).validate();
  const std::int64_t base = n - k + 1;
  std::vector<Generator> gens{even_generator("x~", 2)};
  for (std::int64_t j = base; j <= n; ++j) gens.push_back(odd_generator(detail::indexed("y~", j), 2 * j - 1));
  // Rational data; the prime only fixes the scalar type.
  auto alg = std::make_shared<RingPresentation>(3, std::move(gens), RingPresentation::Bound::unchecked);
  alg->set_label("minimal model of PW_{" + std::to_string(n) + "," + std::to_string(k) + "}");
  alg->seal();
  MinimalModel mm;
  mm.n = n;
  mm.k = k;
  mm.algebra = alg;
  mm.differential.emplace(detail::indexed("y~", base), Element(alg, alg->monomial({}, {{"x~", base}})));
  return mm;
}

}  // namespace stiefel
