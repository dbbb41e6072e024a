#pragma once

// Multiplicative first-quadrant spectral sequences over Z_(p) for fibrations
// F -> E -> B whose fiber cohomology is an exterior algebra on transgressive
// classes.
//
// The engine builds the filtered cochain model B (x) Lambda(z_1, ..., z_f)
// with d(z_i) = tau(z_i) in B, extended by the Leibniz rule, filtered by base
// degree. Pages come from the standard cycle/boundary lattices
//
//   E_r^s = Z_r^s / (Z_{r-1}^{s+1} + d Z_{r-1}^{s-r+1}),
//   Z_r^s = { a in F^s : d a in F^{s+r} },
//
// each a sublattice of a free Z_(p)-module, so every quotient is measured by
// elementary divisors (see local_matrix.hpp).

#include "stiefel/graded_algebra.hpp"
#include "stiefel/graded_module.hpp"
#include "stiefel/local_matrix.hpp"
#include "stiefel/space_catalog.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace stiefel {

struct FiberGenerator {
  std::string name;
  std::int64_t degree = 0;  // odd
  Element transgression;    // in the base, degree + 1
};

/// Base ring (free as a Z_(p)-module through the truncation) plus the
/// transgression of every fiber generator.
struct SSConfiguration {
  std::string label;
  PresentationPtr base;
  std::vector<FiberGenerator> fiber;
};

struct Bidegree {
  std::int64_t s = 0;  // base degree
  std::int64_t t = 0;  // fiber degree
  auto operator<=>(const Bidegree&) const = default;
};

struct PageEntry {
  ModuleStructure module;
  IntMatrix cycles;  // basis of Z_r^{s} in cochain coordinates of degree s+t
};

struct PageDifferential {
  Bidegree source;
  Bidegree target;
  /// Column j: coordinates of d_r(generator j) in the target's cycle basis.
  std::vector<std::vector<LocalScalar>> columns;
  bool nonzero = false;
};

struct SSPage {
  std::int64_t r = 0;
  std::map<Bidegree, PageEntry> entries;  // nonzero entries only
  std::vector<PageDifferential> differentials;
  bool has_nonzero_differential = false;
};

struct SSOptions {
  /// Nonzero: permute the cochain basis in every degree with this seed.
  std::uint64_t shuffle_seed = 0;
  bool keep_pages = true;
};

struct SSResult {
  std::string label;
  std::int64_t prime = 3;
  std::int64_t truncation = 0;
  std::vector<SSPage> pages;  // E_2, E_3, ... through the first page equal to E_infinity
  SSPage e_infinity;
  GradedModuleTable total;    // associated graded of H^q, q <= truncation
  std::int64_t last_nonzero_differential = 0;  // r, or 0 if every d_r vanishes
  bool chain_d_squared_zero = true;
  bool page_d_squared_zero = true;

  const ModuleStructure* e_infinity_at(Bidegree b) const {
    auto it = e_infinity.entries.find(b);
    return it == e_infinity.entries.end() ? nullptr : &it->second.module;
  }
};

/// The cochain model of an SSConfiguration in degrees 0..max_degree.
class FilteredComplex {
 public:
  struct Cell {
    Monomial base;
    std::uint64_t fiber = 0;  // bit i <-> fiber generator i
    std::int64_t filtration = 0;
  };

  FilteredComplex(SSConfiguration config, std::int64_t max_degree, std::uint64_t shuffle_seed = 0)
      : config_(std::move(config)), max_degree_(max_degree) {
    const auto& base = *config_.base;
    p_ = base.prime();
    if (config_.fiber.size() > 62) throw DomainError("too many fiber generators");
    for (const auto& z : config_.fiber) {
      if (z.degree <= 0 || z.degree % 2 == 0) throw DomainError("fiber generator " + z.name + " must have odd degree");
      if (!z.transgression.is_zero()) {
        if (z.transgression.ring_ptr() != config_.base && !(z.transgression.ring() == base))
          throw DomainError("transgression of " + z.name + " lives in another ring");
        auto d = z.transgression.degree();
        if (!d || *d != z.degree + 1) throw DomainError("transgression of " + z.name + " has the wrong degree");
      }
    }
    std::mt19937_64 rng(shuffle_seed);
    cells_.resize(static_cast<std::size_t>(max_degree_ + 2));
    const std::uint64_t masks = std::uint64_t{1} << config_.fiber.size();
    for (std::int64_t q = 0; q <= max_degree_ + 1; ++q) {
      auto& list = cells_[static_cast<std::size_t>(q)];
      for (std::uint64_t s = 0; s < masks; ++s) {
        std::int64_t fd = fiber_degree(s);
        if (fd > q) continue;
        for (const auto& b : base.monomials_of_degree(q - fd)) {
          Valuation v = base.order_valuation(b);
          if (v == Valuation(0)) continue;
          if (v.is_finite() && q <= max_degree_)
            throw DomainError("base ring has torsion in degree " + std::to_string(q - fd) + "; the model needs a free base");
          if (v.is_finite()) continue;
          list.push_back({b, s, q - fd});
        }
      }
      if (shuffle_seed != 0) std::shuffle(list.begin(), list.end(), rng);
      auto& idx = index_[static_cast<std::size_t>(q)];
      for (std::size_t i = 0; i < list.size(); ++i) idx[{list[i].base, list[i].fiber}] = i;
    }
    for (std::int64_t q = 0; q <= max_degree_; ++q) differentials_.push_back(build_differential(q));
  }

  std::int64_t prime() const { return p_; }
  std::int64_t max_degree() const { return max_degree_; }
  const SSConfiguration& config() const { return config_; }
  const std::vector<Cell>& cells(std::int64_t q) const { return cells_.at(static_cast<std::size_t>(q)); }
  /// d: C^q -> C^{q+1}, defined for q <= max_degree.
  const IntMatrix& differential(std::int64_t q) const { return differentials_.at(static_cast<std::size_t>(q)); }

  std::int64_t fiber_degree(std::uint64_t mask) const {
    std::int64_t d = 0;
    for (std::size_t i = 0; i < config_.fiber.size(); ++i)
      if (mask & (std::uint64_t{1} << i)) d += config_.fiber[i].degree;
    return d;
  }

  /// d(b z_S) = sum_l (-1)^{|b| + l - 1} (b tau(z_{S_l})) z_{S minus S_l},
  /// S_1 < S_2 < ... the generators of S in order. Result keyed by cell.
  std::vector<std::pair<Cell, BigInt>> apply(const Cell& c) const {
    std::vector<std::pair<Cell, BigInt>> out;
    const auto& base = config_.base;
    const std::int64_t bdeg = base->degree(c.base);
    int position = 0;
    for (std::size_t i = 0; i < config_.fiber.size(); ++i) {
      if (!(c.fiber & (std::uint64_t{1} << i))) continue;
      const int sign = ((bdeg + position) % 2) ? -1 : 1;
      ++position;
      const auto& tau = config_.fiber[i].transgression;
      if (tau.is_zero()) continue;
      Element prod = multiply(Element(base, c.base), tau);
      for (const auto& [m, coeff] : prod.terms()) {
        if (coeff.denominator() != 1) throw DomainError("transgressions must have integral coefficients");
        Cell target{m, c.fiber & ~(std::uint64_t{1} << i), base->degree(m)};
        out.emplace_back(target, sign * coeff.numerator());
      }
    }
    return out;
  }

  std::int64_t cell_index(std::int64_t q, const Cell& c) const {
    const auto& idx = index_.at(static_cast<std::size_t>(q));
    auto it = idx.find({c.base, c.fiber});
    return it == idx.end() ? -1 : static_cast<std::int64_t>(it->second);
  }

  /// Sorted distinct filtrations present in degree q.
  std::vector<std::int64_t> filtrations(std::int64_t q) const {
    std::set<std::int64_t> f;
    for (const auto& c : cells(q)) f.insert(c.filtration);
    return {f.begin(), f.end()};
  }

 private:
  IntMatrix build_differential(std::int64_t q) const {
    const auto& src = cells(q);
    const auto& dst = cells(q + 1);
    IntMatrix d(dst.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j)
      for (const auto& [cell, coeff] : apply(src[j])) {
        auto i = cell_index(q + 1, cell);
        if (i < 0) continue;  // beyond the base truncation
        d(static_cast<std::size_t>(i), j) += coeff;
      }
    return d;
  }

  SSConfiguration config_;
  std::int64_t max_degree_;
  std::int64_t p_ = 3;
  std::vector<std::vector<Cell>> cells_;
  std::map<std::size_t, std::map<std::pair<Monomial, std::uint64_t>, std::size_t>> index_;
  std::vector<IntMatrix> differentials_;
};

namespace detail {

// Sum of elementary-divisor exponents plus rank: two lattices S <= T with the
// same rank and saturation are equal iff their indices agree.
inline std::pair<std::size_t, std::int64_t> span_invariant(const IntMatrix& gens, std::int64_t p) {
  if (gens.cols() == 0) return {0, 0};
  auto v = elementary_divisors(gens, p);
  return {v.size(), std::accumulate(v.begin(), v.end(), std::int64_t{0})};
}

class PageComputer {
 public:
  explicit PageComputer(const FilteredComplex& c) : c_(c), p_(c.prime()) {}

  // Basis of Z_r^{s} in degree q, as columns in C^q coordinates.
  const IntMatrix& cycles(std::int64_t q, std::int64_t s, std::int64_t r) {
    auto key = std::make_tuple(q, s, r);
    auto it = z_cache_.find(key);
    if (it != z_cache_.end()) return it->second;
    const auto& src = c_.cells(q);
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < src.size(); ++j)
      if (src[j].filtration >= s) cols.push_back(j);
    IntMatrix result(src.size(), 0);
    if (!cols.empty()) {
      const auto& dst = c_.cells(q + 1);
      std::vector<std::size_t> rows;
      for (std::size_t i = 0; i < dst.size(); ++i)
        if (dst[i].filtration < s + r) rows.push_back(i);
      const IntMatrix& d = c_.differential(q);
      IntMatrix a(rows.size(), cols.size());
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) a(i, j) = d(rows[i], cols[j]);
      IntMatrix k = kernel_basis(a, p_);
      result = IntMatrix(src.size(), k.cols());
      for (std::size_t j = 0; j < k.cols(); ++j)
        for (std::size_t i = 0; i < cols.size(); ++i) result(cols[i], j) = k(i, j);
    }
    return z_cache_.emplace(key, std::move(result)).first->second;
  }

  // Generators of Z_{r-1}^{s+1} + d Z_{r-1}^{s-r+1} in degree q.
  IntMatrix boundaries(std::int64_t q, std::int64_t s, std::int64_t r) {
    IntMatrix g = cycles(q, s + 1, r - 1);
    if (q >= 1) {
      const IntMatrix& lower = cycles(q - 1, s - r + 1, r - 1);
      if (lower.cols() > 0) g = g.hconcat(c_.differential(q - 1) * lower);
    }
    return g;
  }

  const Lattice& lattice(std::int64_t q, std::int64_t s, std::int64_t r) {
    auto key = std::make_tuple(q, s, r);
    auto it = lattice_cache_.find(key);
    if (it != lattice_cache_.end()) return it->second;
    return lattice_cache_.emplace(key, Lattice(cycles(q, s, r), p_)).first->second;
  }

  ModuleStructure entry(std::int64_t q, std::int64_t s, std::int64_t r) {
    const IntMatrix& z = cycles(q, s, r);
    if (z.cols() == 0) return {};
    return lattice(q, s, r).quotient(boundaries(q, s, r));
  }

 private:
  const FilteredComplex& c_;
  std::int64_t p_;
  std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t>, IntMatrix> z_cache_;
  std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t>, Lattice> lattice_cache_;
};

}  // namespace detail

/// Runs the spectral sequence through total degree `truncation`.
inline SSResult run_spectral_sequence(const SSConfiguration& config, std::int64_t truncation,
                                      const SSOptions& options = {}) {
  if (truncation < 0) throw DomainError("truncation degree must be non-negative");
  FilteredComplex complex(config, truncation, options.shuffle_seed);
  detail::PageComputer pc(complex);
  const std::int64_t p = complex.prime();

  SSResult res;
  res.label = config.label;
  res.prime = p;
  res.truncation = truncation;

  for (std::int64_t q = 0; q + 1 <= truncation; ++q)
    if (!(complex.differential(q + 1) * complex.differential(q)).is_zero()) res.chain_d_squared_zero = false;

  std::int64_t max_filtration = 0;
  for (std::int64_t q = 0; q <= truncation + 1; ++q)
    for (const auto& c : complex.cells(q)) max_filtration = std::max(max_filtration, c.filtration);
  const std::int64_t r_infinity = max_filtration + 2;

  auto compute_page = [&](std::int64_t r) {
    SSPage page;
    page.r = r;
    for (std::int64_t q = 0; q <= truncation; ++q)
      for (std::int64_t s : complex.filtrations(q)) {
        ModuleStructure m = pc.entry(q, s, r);
        if (m.is_zero()) continue;
        page.entries[{s, q - s}] = PageEntry{m, pc.cycles(q, s, r)};
      }
    return page;
  };

  res.e_infinity = compute_page(r_infinity);
  for (std::int64_t q = 0; q <= truncation; ++q) {
    ModuleStructure tot;
    for (const auto& [b, e] : res.e_infinity.entries)
      if (b.s + b.t == q) tot += e.module;
    if (res.total.degrees.empty()) res.total = GradedModuleTable(p, truncation);
    res.total.at(q) = tot;
  }
  if (res.total.degrees.empty()) res.total = GradedModuleTable(p, truncation);

  auto same_structure = [](const SSPage& a, const SSPage& b) {
    if (a.entries.size() != b.entries.size()) return false;
    for (const auto& [bd, e] : a.entries) {
      auto it = b.entries.find(bd);
      if (it == b.entries.end() || !(it->second.module == e.module)) return false;
    }
    return true;
  };

  // Page differentials d_r: (s, t) -> (s + r, t - r + 1), for sources in
  // degrees below the truncation.
  auto attach_differentials = [&](SSPage& page) {
    const std::int64_t r = page.r;
    for (const auto& [src, entry] : page.entries) {
      const std::int64_t q = src.s + src.t;
      if (q + 1 > truncation) continue;
      Bidegree tgt{src.s + r, src.t - r + 1};
      auto tit = page.entries.find(tgt);
      if (tit == page.entries.end()) continue;
      PageDifferential pd;
      pd.source = src;
      pd.target = tgt;
      IntMatrix image = complex.differential(q) * entry.cycles;
      const Lattice& target_lattice = pc.lattice(q + 1, tgt.s, r);
      for (std::size_t j = 0; j < image.cols(); ++j) {
        auto c = target_lattice.coordinates(image.column(j));
        if (!c) throw std::logic_error("d_r image left the target cycle lattice");
        pd.columns.push_back(std::move(*c));
      }
      IntMatrix den = pc.boundaries(q + 1, tgt.s, r);
      auto before = detail::span_invariant(den, p);
      auto after = detail::span_invariant(den.hconcat(image), p);
      pd.nonzero = before != after;
      page.has_nonzero_differential = page.has_nonzero_differential || pd.nonzero;
      page.differentials.push_back(std::move(pd));
    }
    // d_r o d_r lands in the boundaries of the second target.
    for (const auto& first : page.differentials) {
      for (const auto& second : page.differentials) {
        if (second.source != first.target) continue;
        const auto& tgt_entry = page.entries.at(second.target);
        const std::int64_t q2 = second.target.s + second.target.t;
        IntMatrix den = pc.boundaries(q2, second.target.s, r);
        auto base_inv = detail::span_invariant(den, p);
        for (const auto& col : first.columns) {
          // composite coordinates, then back to cochains, cleared of units
          std::vector<LocalScalar> comp(tgt_entry.cycles.cols(), LocalScalar(0, p));
          for (std::size_t i = 0; i < col.size(); ++i)
            for (std::size_t k = 0; k < comp.size(); ++k) comp[k] += second.columns[i][k] * col[i];
          BigInt den_lcm = 1;
          for (const auto& x : comp) den_lcm = lcm(den_lcm, x.denominator());
          std::vector<BigInt> vec(tgt_entry.cycles.rows(), 0);
          for (std::size_t k = 0; k < comp.size(); ++k) {
            BigInt coeff = comp[k].numerator() * (den_lcm / comp[k].denominator());
            for (std::size_t i = 0; i < vec.size(); ++i) vec[i] += coeff * tgt_entry.cycles(i, k);
          }
          IntMatrix v = IntMatrix::from_columns(vec.size(), {vec});
          if (detail::span_invariant(den.hconcat(v), p) != base_inv) res.page_d_squared_zero = false;
        }
      }
    }
  };

  for (std::int64_t r = 2;; ++r) {
    SSPage page = compute_page(r);
    const bool final_page = same_structure(page, res.e_infinity) || r >= r_infinity;
    attach_differentials(page);
    if (page.has_nonzero_differential) res.last_nonzero_differential = r;
    if (options.keep_pages || final_page) res.pages.push_back(std::move(page));
    if (final_page) break;
  }
  attach_differentials(res.e_infinity);
  return res;
}

/// W_{n,k} -> PW_{n,k} -> CP^infinity: base Z_(p)[x] cut off at
/// x^{ceil(T/2)+1}, fiber Lambda(z_{n-k+1..n}), d_{2j}(z_j) = C(n,j) x^j.
inline SSConfiguration pw_configuration(std::int64_t n, std::int64_t k, std::int64_t p, std::int64_t truncation,
                                        const std::vector<BigInt>* coefficients = nullptr) {
  SpaceDescriptor::pw(n, k).validate();
  require_odd_prime(p);
  auto base = std::make_shared<RingPresentation>(p, std::vector<Generator>{even_generator("x", 2)});
  base->add_relation(BigInt(1), base->monomial({}, {{"x", (truncation + 1) / 2 + 1}}));
  base->set_label("CP^infinity");
  base->seal();
  SSConfiguration cfg;
  cfg.label = SpaceDescriptor::pw(n, k).to_string();
  cfg.base = base;
  for (std::int64_t j = n - k + 1; j <= n; ++j) {
    BigInt c = coefficients ? coefficients->at(static_cast<std::size_t>(j - (n - k + 1))) : binomial(n, j);
    Element tau(base);
    tau.add_term(base->monomial({}, {{"x", j}}), LocalScalar(c, p));
    cfg.fiber.push_back({"z_" + std::to_string(j), 2 * j - 1, tau});
  }
  return cfg;
}

inline void require_pw_truncation(std::int64_t n, std::int64_t k, std::int64_t truncation) {
  const std::int64_t need = 2 * n * k - k * k + 1;
  if (truncation < need)
    throw DomainError("truncation degree " + std::to_string(truncation) + " is below " + std::to_string(need) +
                      " = dim + 2; convergence would be incomplete");
}

inline SSResult run_pw_spectral_sequence(std::int64_t n, std::int64_t k, std::int64_t p, std::int64_t truncation,
                                         const SSOptions& options = {}) {
  require_pw_truncation(n, k, truncation);
  return run_spectral_sequence(pw_configuration(n, k, p, truncation), truncation, options);
}

inline GradedModuleTable run_pw_fibration(std::int64_t n, std::int64_t k, std::int64_t p, std::int64_t truncation) {
  SSOptions o;
  o.keep_pages = false;
  return run_pw_spectral_sequence(n, k, p, truncation, o).total;
}

/// W_{n,k} -> P_l W_{n,k} -> CP^infinity with d_{2j}(z_j) = +-h_j(l) x^j.
/// Only built when p does not divide h_{n-k+1}(l).
inline SSResult run_plw_spectral_sequence(std::int64_t n, std::int64_t k, const std::vector<std::int64_t>& l,
                                          std::int64_t p, std::int64_t truncation, const SSOptions& options = {}) {
  SpaceDescriptor::plw(n, k, l).validate();
  require_pw_truncation(n, k, truncation);
  if (complete_symmetric_sum(l, n - k + 1) % p == 0)
    throw UnsupportedRegime("p divides h_{n-k+1}(l): the P_l W spectral sequence is not modelled here");
  std::vector<BigInt> coeffs;
  for (std::int64_t j = n - k + 1; j <= n; ++j) {
    BigInt h = complete_symmetric_sum(l, j);
    coeffs.push_back(j % 2 ? -h : h);
  }
  auto cfg = pw_configuration(n, k, p, truncation, &coeffs);
  cfg.label = SpaceDescriptor::plw(n, k, l).to_string();
  return run_spectral_sequence(cfg, truncation, options);
}

/// S^1 -> W_{n,k;m} -> PW_{n,k} for p > n and p | m: the base is the
/// torsion-free PW cohomology, d_2(e) = m x.
inline SSConfiguration wm_configuration(std::int64_t n, std::int64_t k, std::int64_t m, std::int64_t p) {
  SpaceDescriptor::wm(n, k, m).validate();
  require_odd_prime(p);
  if (m % p != 0) throw DomainError("run_wm_fibration needs p | m");
  if (p <= n) throw DomainError("run_wm_fibration needs p > n");
  SSConfiguration cfg;
  cfg.label = SpaceDescriptor::wm(n, k, m).to_string();
  cfg.base = presentation(SpaceDescriptor::pw(n, k), p);
  Element tau(cfg.base);
  tau.add_term(cfg.base->monomial({}, {{"x", 1}}), LocalScalar(BigInt(m), p));
  cfg.fiber.push_back({"e", 1, tau});
  return cfg;
}

struct WMFibrationResult {
  SSResult ss;
  GradedModuleTable table;
  Bidegree witness;                 // (2(n-k), 1): e (x) x^{n-k}
  ModuleStructure witness_module;   // E_infinity there
  bool witness_is_e_times_top_power = false;
};

inline WMFibrationResult run_wm_fibration(std::int64_t n, std::int64_t k, std::int64_t m, std::int64_t p,
                                          std::int64_t truncation, const SSOptions& options = {}) {
  const std::int64_t need = 2 * n * k - k * k + 2;
  if (truncation < need)
    throw DomainError("truncation degree " + std::to_string(truncation) + " is below " + std::to_string(need) +
                      " = dim + 2; convergence would be incomplete");
  auto cfg = wm_configuration(n, k, m, p);
  WMFibrationResult out;
  out.ss = run_spectral_sequence(cfg, truncation, options);
  out.table = out.ss.total;
  out.witness = {2 * (n - k), 1};
  if (auto* mod = out.ss.e_infinity_at(out.witness)) out.witness_module = *mod;
  // The surviving class there should be spanned by e (x) x^{n-k} itself.
  auto it = out.ss.e_infinity.entries.find(out.witness);
  if (it != out.ss.e_infinity.entries.end() && it->second.cycles.cols() == 1) {
    const auto& base = cfg.base;
    FilteredComplex::Cell e_top{base->monomial({}, {{"x", n - k}}), 1, 2 * (n - k)};
    FilteredComplex ref(cfg, truncation, options.shuffle_seed);
    const std::int64_t q = 2 * (n - k) + 1;
    auto idx = ref.cell_index(q, e_top);
    if (idx >= 0) {
      bool only_that = true;
      const auto& col = it->second.cycles;
      for (std::size_t i = 0; i < col.rows(); ++i) {
        bool nonzero = col(i, 0) != 0;
        bool is_unit = nonzero && valuation(col(i, 0), p) == Valuation(0);
        if (static_cast<std::int64_t>(i) == idx ? !is_unit : nonzero) only_that = false;
      }
      out.witness_is_e_times_top_power = only_that;
    }
  }
  return out;
}

/// One degree where two tables disagree.
struct DegreeMismatch {
  std::int64_t degree = 0;
  ModuleStructure left;
  ModuleStructure right;
};

struct ComparisonReport {
  bool equal = true;
  bool truncation_differs = false;
  std::int64_t compared_through = -1;
  std::vector<DegreeMismatch> mismatches;

  const DegreeMismatch* first_mismatch() const { return mismatches.empty() ? nullptr : &mismatches.front(); }
};

/// Degreewise comparison of free ranks and torsion multisets over the common range.
inline ComparisonReport compare_tables(const GradedModuleTable& a, const GradedModuleTable& b) {
  ComparisonReport rep;
  rep.truncation_differs = a.top_degree() != b.top_degree() || a.prime != b.prime;
  rep.compared_through = std::min(a.top_degree(), b.top_degree());
  for (std::int64_t d = 0; d <= rep.compared_through; ++d)
    if (!(a.at(d) == b.at(d))) rep.mismatches.push_back({d, a.at(d), b.at(d)});
  rep.equal = rep.mismatches.empty() && !rep.truncation_differs;
  return rep;
}

}  // namespace stiefel
