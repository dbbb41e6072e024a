#pragma once

// Independent reference computations used only by the tests. None of these
// call into the library's valuation-pivot Smith reduction or its monomial
// order bookkeeping: they work over Z with plain gcd elimination and build
// their own bases.

#include "stiefel/graded_module.hpp"
#include "stiefel/plocal_arith.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using stiefel::BigInt;
using Matrix = std::vector<std::vector<BigInt>>;  // row-major, rows x cols

inline BigInt pascal_binomial(std::int64_t n, std::int64_t j) {
  std::vector<BigInt> row{1};
  for (std::int64_t i = 1; i <= n; ++i) {
    std::vector<BigInt> next(row.size() + 1, 0);
    for (std::size_t t = 0; t < row.size(); ++t) {
      next[t] += row[t];
      next[t + 1] += row[t];
    }
    row = std::move(next);
  }
  return row.at(static_cast<std::size_t>(j));
}

/// h_j(l) by enumerating every multi-index I with |I| = j.
inline BigInt enumerated_symmetric_sum(const std::vector<std::int64_t>& l, std::int64_t j) {
  BigInt total = 0;
  std::function<void(std::size_t, std::int64_t, BigInt)> go = [&](std::size_t idx, std::int64_t left, BigInt acc) {
    if (idx + 1 == l.size()) {
      BigInt t = acc;
      for (std::int64_t e = 0; e < left; ++e) t *= l[idx];
      total += t;
      return;
    }
    BigInt cur = acc;
    for (std::int64_t e = 0; e <= left; ++e) {
      go(idx + 1, left - e, cur);
      cur *= l[idx];
    }
  };
  go(0, j, BigInt(1));
  return total;
}

/// v_p(i!) as the sum of v_p(t), t = 1..i.
inline std::int64_t factorial_valuation_by_terms(std::int64_t i, std::int64_t p) {
  std::int64_t v = 0;
  for (std::int64_t t = 2; t <= i; ++t)
    for (std::int64_t x = t; x % p == 0; x /= p) ++v;
  return v;
}

/// Diagonalizes an integer matrix by Euclidean row and column operations and
/// returns the nonzero diagonal entries (not necessarily a divisor chain).
inline std::vector<BigInt> integer_diagonal(Matrix a) {
  std::vector<BigInt> out;
  const std::size_t rows = a.size();
  if (rows == 0) return out;
  const std::size_t cols = a[0].size();
  for (std::size_t t = 0; t < rows && t < cols; ++t) {
    for (;;) {
      // smallest nonzero |entry| in the remaining block becomes the pivot
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a[i][j] != 0 && (pi == rows || abs(a[i][j]) < abs(a[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi == rows) return out;
      std::swap(a[t], a[pi]);
      for (auto& row : a) std::swap(row[t], row[pj]);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        BigInt q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        clean = clean && a[i][t] == 0;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        BigInt q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        clean = clean && a[t][j] == 0;
      }
      if (clean) break;
    }
    out.push_back(abs(a[t][t]));
  }
  return out;
}

inline std::int64_t vp(BigInt a, std::int64_t p) {
  std::int64_t v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

/// Z^dim / span(columns of rel), localized at p.
inline stiefel::ModuleStructure local_cokernel(std::size_t dim, const Matrix& rel_rows, std::int64_t p) {
  stiefel::ModuleStructure m;
  auto diag = integer_diagonal(rel_rows);
  m.free_rank = static_cast<std::int64_t>(dim) - static_cast<std::int64_t>(diag.size());
  for (const auto& d : diag) m.add_torsion(vp(d, p));
  return m;
}

/// Lambda(odd generators) (x) Z[x] modulo the ideal generated by c * x^e * (exterior monomial).
struct MonomialIdealRing {
  std::vector<std::int64_t> odd_degrees;
  struct Relation {
    std::int64_t coefficient;
    std::int64_t x_power;
    std::uint64_t mask;
  };
  std::vector<Relation> relations;

  std::int64_t mask_degree(std::uint64_t mask) const {
    std::int64_t d = 0;
    for (std::size_t i = 0; i < odd_degrees.size(); ++i)
      if (mask & (std::uint64_t{1} << i)) d += odd_degrees[i];
    return d;
  }

  /// Per-degree quotient, built by spanning every multiple of every relation.
  stiefel::GradedModuleTable table(std::int64_t p, std::int64_t top) const {
    stiefel::GradedModuleTable t(p, top);
    const std::uint64_t masks = std::uint64_t{1} << odd_degrees.size();
    for (std::int64_t d = 0; d <= top; ++d) {
      std::map<std::pair<std::int64_t, std::uint64_t>, std::size_t> basis;
      for (std::uint64_t s = 0; s < masks; ++s) {
        std::int64_t rest = d - mask_degree(s);
        if (rest >= 0 && rest % 2 == 0) basis.emplace(std::make_pair(rest / 2, s), basis.size());
      }
      Matrix rows;
      for (const auto& r : relations)
        for (std::uint64_t s = 0; s < masks; ++s) {
          if (s & r.mask) continue;
          std::uint64_t m = s | r.mask;
          std::int64_t rest = d - mask_degree(m) - 2 * r.x_power;
          if (rest < 0 || rest % 2 != 0) continue;
          auto it = basis.find({rest / 2 + r.x_power, m});
          if (it == basis.end()) continue;
          std::vector<BigInt> row(basis.size(), 0);
          row[it->second] = r.coefficient;
          rows.push_back(std::move(row));
        }
      if (rows.empty()) {
        t.at(d).free_rank = static_cast<std::int64_t>(basis.size());
      } else {
        t.at(d) = local_cokernel(basis.size(), rows, p);
      }
    }
    return t;
  }
};

inline MonomialIdealRing pw_ring(std::int64_t n, std::int64_t k) {
  MonomialIdealRing r;
  for (std::int64_t j = n - k + 2; j <= n; ++j) r.odd_degrees.push_back(2 * j - 1);
  for (std::int64_t j = n - k + 1; j <= n; ++j)
    r.relations.push_back({static_cast<std::int64_t>(pascal_binomial(n, j)), j, 0});
  return r;
}

/// H^q of the cochain model Z[x] (x) Lambda(z_{n-k+1..n}), d z_j = coeff_j x^j,
/// computed directly (no filtration), q = 0..top.
inline stiefel::GradedModuleTable model_homology(std::int64_t n, std::int64_t k, const std::vector<BigInt>& coeffs,
                                                 std::int64_t p, std::int64_t top) {
  const std::int64_t lo = n - k + 1;
  const std::size_t f = static_cast<std::size_t>(k);
  auto zdeg = [&](std::uint64_t s) {
    std::int64_t d = 0;
    for (std::size_t i = 0; i < f; ++i)
      if (s & (std::uint64_t{1} << i)) d += 2 * (lo + static_cast<std::int64_t>(i)) - 1;
    return d;
  };
  auto cells = [&](std::int64_t q) {
    std::vector<std::pair<std::int64_t, std::uint64_t>> out;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << f); ++s) {
      std::int64_t rest = q - zdeg(s);
      if (rest >= 0 && rest % 2 == 0) out.push_back({rest / 2, s});
    }
    return out;
  };
  // d(x^i z_S) = sum_l (-1)^{l-1} coeff x^{i + j_l} z_{S minus l}
  auto differential = [&](std::int64_t q) {
    auto src = cells(q), dst = cells(q + 1);
    std::map<std::pair<std::int64_t, std::uint64_t>, std::size_t> index;
    for (std::size_t i = 0; i < dst.size(); ++i) index[dst[i]] = i;
    Matrix m(dst.size(), std::vector<BigInt>(src.size(), 0));
    for (std::size_t c = 0; c < src.size(); ++c) {
      auto [i, s] = src[c];
      int pos = 0;
      for (std::size_t l = 0; l < f; ++l) {
        if (!(s & (std::uint64_t{1} << l))) continue;
        int sign = pos % 2 ? -1 : 1;
        ++pos;
        auto it = index.find({i + lo + static_cast<std::int64_t>(l), s & ~(std::uint64_t{1} << l)});
        if (it != index.end()) m[it->second][c] += sign * coeffs[l];
      }
    }
    return m;
  };
  auto rank = [](const Matrix& m) { return static_cast<std::int64_t>(integer_diagonal(m).size()); };
  stiefel::GradedModuleTable t(p, top);
  for (std::int64_t q = 0; q <= top; ++q) {
    const auto dim = static_cast<std::int64_t>(cells(q).size());
    Matrix out = differential(q);
    std::int64_t kernel = dim - (out.empty() ? 0 : rank(out));
    stiefel::ModuleStructure h;
    if (q == 0) {
      h.free_rank = kernel;
    } else {
      Matrix in = differential(q - 1);
      auto diag = in.empty() || in[0].empty() ? std::vector<BigInt>{} : integer_diagonal(in);
      h.free_rank = kernel - static_cast<std::int64_t>(diag.size());
      for (const auto& d : diag) h.add_torsion(vp(d, p));
    }
    t.at(q) = h;
  }
  return t;
}

/// Mod-p Betti numbers of PW_{n,k}: F_p[x]/(x^N) (x) Lambda(y_j : n-k+1 <= j <= n, j != N),
/// |y_j| = 2j - 1, where N is the least j >= n-k+1 with p not dividing C(n,j).
inline std::vector<std::int64_t> pw_mod_p_betti(std::int64_t n, std::int64_t k, std::int64_t p, std::int64_t top) {
  std::int64_t N = n - k + 1;
  while (pascal_binomial(n, N) % p == 0) ++N;
  std::vector<std::int64_t> degs;
  for (std::int64_t j = n - k + 1; j <= n; ++j)
    if (j != N) degs.push_back(2 * j - 1);
  std::vector<std::int64_t> b(static_cast<std::size_t>(top + 1), 0);
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << degs.size()); ++s) {
    std::int64_t d = 0;
    for (std::size_t i = 0; i < degs.size(); ++i)
      if (s & (std::uint64_t{1} << i)) d += degs[i];
    for (std::int64_t e = 0; e < N; ++e)
      if (d + 2 * e <= top) ++b[static_cast<std::size_t>(d + 2 * e)];
  }
  return b;
}

/// Mod-p Betti numbers from an integral table by universal coefficients.
inline std::vector<std::int64_t> mod_p_betti(const stiefel::GradedModuleTable& t, std::int64_t through) {
  std::vector<std::int64_t> b;
  for (std::int64_t q = 0; q <= through; ++q)
    b.push_back(t.at(q).free_rank + static_cast<std::int64_t>(t.at(q).torsion.size()) +
                static_cast<std::int64_t>(t.at(q + 1).torsion.size()));
  return b;
}

inline std::int64_t torsion_length(const stiefel::ModuleStructure& m) {
  std::int64_t s = 0;
  for (auto v : m.torsion) s += v;
  return s;
}

/// Cohomology of CP^n as a table.
inline stiefel::GradedModuleTable cp_table(std::int64_t n, std::int64_t p) {
  stiefel::GradedModuleTable t(p, 2 * n);
  for (std::int64_t i = 0; i <= n; ++i) t.at(2 * i).free_rank = 1;
  return t;
}

inline stiefel::GradedModuleTable sphere_table(std::int64_t d, std::int64_t p) {
  stiefel::GradedModuleTable t(p, d);
  t.at(0).free_rank = 1;
  t.at(d).free_rank += 1;
  return t;
}

inline std::vector<std::int64_t> odd_primes_upto(std::int64_t hi) {
  std::vector<std::int64_t> out;
  for (std::int64_t q = 3; q <= hi; q += 2) {
    bool prime = true;
    for (std::int64_t d = 3; d * d <= q; d += 2)
      if (q % d == 0) prime = false;
    if (prime) out.push_back(q);
  }
  return out;
}

}  // namespace oracle
