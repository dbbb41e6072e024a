#pragma once

// Integer matrices read as maps of free Z_(p)-modules.
//
// Z_(p) is a discrete valuation ring, so every matrix diagonalizes under
// invertible row and column operations to unit * p^v entries. Elimination
// picks the entry of least valuation as pivot; it then divides everything in
// its row and column. Operations stay inside the integers by scaling the
// target row (or column) by the pivot's p-free part, which is a unit.

#include "stiefel/graded_module.hpp"
#include "stiefel/plocal_arith.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace stiefel {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  /// Matrix whose columns are the given vectors (all of length `rows`).
  static IntMatrix from_columns(std::size_t rows, const std::vector<std::vector<BigInt>>& cols) {
    IntMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j].at(i);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<BigInt> column(std::size_t j) const {
    std::vector<BigInt> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  /// Columns of *this followed by columns of o.
  IntMatrix hconcat(const IntMatrix& o) const {
    if (o.rows_ != rows_ && o.cols_ != 0 && cols_ != 0) throw std::logic_error("hconcat: row mismatch");
    std::size_t r = cols_ ? rows_ : o.rows_;
    IntMatrix m(r, cols_ + o.cols_);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
      for (std::size_t j = 0; j < o.cols_; ++j) m(i, cols_ + j) = o(i, j);
    }
    return m;
  }

  IntMatrix operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw std::logic_error("matrix product: dimension mismatch");
    IntMatrix m(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const BigInt& a = (*this)(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          const BigInt& b = o(k, j);
          if (b != 0) m(i, j) += a * b;
        }
      }
    return m;
  }

  bool operator==(const IntMatrix&) const = default;

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

/// Result of diagonalizing A: left * A * right = diagonal, with the first
/// `rank` diagonal entries nonzero and their valuations ascending.
struct SmithForm {
  IntMatrix diagonal;
  std::optional<IntMatrix> left;
  std::optional<IntMatrix> right;
  std::size_t rank = 0;
  std::vector<std::int64_t> valuations;
};

namespace detail {

inline BigInt exact_div_p_power(const BigInt& a, std::int64_t p, std::int64_t v) {
  return a / ipow(BigInt(p), v);
}

// Divide row i of each listed matrix by the p-free content they share.
inline void strip_row_content(std::int64_t p, std::size_t i, IntMatrix& a, IntMatrix* u) {
  BigInt g = 0;
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (a(i, j) != 0) g = gcd(g, a(i, j));
  if (u)
    for (std::size_t j = 0; j < u->cols(); ++j)
      if ((*u)(i, j) != 0) g = gcd(g, (*u)(i, j));
  if (g == 0) return;
  g = p_free_part(g, p);
  if (g == 1) return;
  for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) /= g;
  if (u)
    for (std::size_t j = 0; j < u->cols(); ++j) (*u)(i, j) /= g;
}

inline void strip_col_content(std::int64_t p, std::size_t j, IntMatrix& a, IntMatrix* v) {
  BigInt g = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (a(i, j) != 0) g = gcd(g, a(i, j));
  if (v)
    for (std::size_t i = 0; i < v->rows(); ++i)
      if ((*v)(i, j) != 0) g = gcd(g, (*v)(i, j));
  if (g == 0) return;
  g = p_free_part(g, p);
  if (g == 1) return;
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, j) /= g;
  if (v)
    for (std::size_t i = 0; i < v->rows(); ++i) (*v)(i, j) /= g;
}

}  // namespace detail

inline SmithForm smith_reduce(IntMatrix a, std::int64_t p, bool track_left, bool track_right) {
  SmithForm out;
  if (track_left) out.left = IntMatrix::identity(a.rows());
  if (track_right) out.right = IntMatrix::identity(a.cols());
  IntMatrix* u = track_left ? &*out.left : nullptr;
  IntMatrix* v = track_right ? &*out.right : nullptr;

  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    std::size_t pi = m, pj = n;
    std::int64_t best = 0;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        if (a(i, j) == 0) continue;
        std::int64_t val = valuation(a(i, j), p).value();
        if (pi == m || val < best) {
          pi = i;
          pj = j;
          best = val;
          if (val == 0) goto found;
        }
      }
  found:
    if (pi == m) break;
    a.swap_rows(t, pi);
    if (u) u->swap_rows(t, pi);
    a.swap_cols(t, pj);
    if (v) v->swap_cols(t, pj);

    const BigInt unit = p_free_part(a(t, t), p);
    for (std::size_t i = t + 1; i < m; ++i) {
      if (a(i, t) == 0) continue;
      BigInt f = detail::exact_div_p_power(a(i, t), p, best);
      for (std::size_t j = t; j < n; ++j) a(i, j) = unit * a(i, j) - f * a(t, j);
      if (u)
        for (std::size_t j = 0; j < u->cols(); ++j) (*u)(i, j) = unit * (*u)(i, j) - f * (*u)(t, j);
      detail::strip_row_content(p, i, a, u);
    }
    for (std::size_t j = t + 1; j < n; ++j) {
      if (a(t, j) == 0) continue;
      BigInt f = detail::exact_div_p_power(a(t, j), p, best);
      for (std::size_t i = t; i < m; ++i) a(i, j) = unit * a(i, j) - f * a(i, t);
      if (v)
        for (std::size_t i = 0; i < v->rows(); ++i) (*v)(i, j) = unit * (*v)(i, j) - f * (*v)(i, t);
      detail::strip_col_content(p, j, a, v);
    }
    out.valuations.push_back(best);
  }
  out.rank = out.valuations.size();
  out.diagonal = std::move(a);
  return out;
}

/// Elementary divisor exponents of A over Z_(p) (one per nonzero invariant factor).
inline std::vector<std::int64_t> elementary_divisors(const IntMatrix& a, std::int64_t p) {
  return smith_reduce(a, p, false, false).valuations;
}

/// Columns spanning ker(A) over Z_(p); the span is saturated.
inline IntMatrix kernel_basis(const IntMatrix& a, std::int64_t p) {
  if (a.rows() == 0) return IntMatrix::identity(a.cols());
  auto s = smith_reduce(a, p, false, true);
  const IntMatrix& v = *s.right;
  IntMatrix k(a.cols(), a.cols() - s.rank);
  for (std::size_t j = s.rank; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.cols(); ++i) k(i, j - s.rank) = v(i, j);
  return k;
}

/// A Z_(p)-lattice L in Z_(p)^m given by a basis, with the transforms needed
/// to express vectors of L in that basis and to measure quotients L / S.
class Lattice {
 public:
  Lattice(IntMatrix basis, std::int64_t p) : basis_(std::move(basis)), p_(p) {
    form_ = smith_reduce(basis_, p_, true, true);
    if (form_.rank != basis_.cols()) throw std::logic_error("Lattice: basis columns are not independent");
  }

  std::size_t ambient_dim() const { return basis_.rows(); }
  std::size_t rank() const { return basis_.cols(); }
  const IntMatrix& basis() const { return basis_; }
  std::int64_t prime() const { return p_; }

  /// U * w, with the rows beyond rank() checked to vanish (w in the Q-span).
  /// Returns the top rows divided by the diagonal p-powers, i.e. coordinates
  /// in the basis (basis * right) up to row units; nullopt if w is not in L.
  std::optional<std::vector<BigInt>> reduced_coordinates(const std::vector<BigInt>& w) const {
    const IntMatrix& u = *form_.left;
    const std::size_t m = ambient_dim();
    std::vector<BigInt> uw(m);
    for (std::size_t i = 0; i < m; ++i) {
      BigInt acc = 0;
      for (std::size_t k = 0; k < m; ++k)
        if (u(i, k) != 0 && w[k] != 0) acc += u(i, k) * w[k];
      uw[i] = std::move(acc);
    }
    for (std::size_t i = rank(); i < m; ++i)
      if (uw[i] != 0) return std::nullopt;
    std::vector<BigInt> c(rank());
    for (std::size_t i = 0; i < rank(); ++i) {
      const std::int64_t e = form_.valuations[i];
      if (uw[i] != 0 && valuation(uw[i], p_).value() < e) return std::nullopt;
      c[i] = detail::exact_div_p_power(uw[i], p_, e);
    }
    return c;
  }

  bool contains(const std::vector<BigInt>& w) const { return reduced_coordinates(w).has_value(); }

  /// Exact coordinates c with basis * c = w, entries in Z_(p).
  std::optional<std::vector<LocalScalar>> coordinates(const std::vector<BigInt>& w) const {
    auto red = reduced_coordinates(w);
    if (!red) return std::nullopt;
    // (U B V) = D, so B V (D^-1 U w)_top = w on the lattice.
    const IntMatrix& d = form_.diagonal;
    const IntMatrix& v = *form_.right;
    std::vector<LocalScalar> y(rank());
    for (std::size_t i = 0; i < rank(); ++i) {
      BigInt unit = p_free_part(d(i, i), p_);
      y[i] = LocalScalar((*red)[i], unit, p_);
    }
    std::vector<LocalScalar> c(rank(), LocalScalar(0, p_));
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t k = 0; k < rank(); ++k)
        if (v(i, k) != 0 && !y[k].is_zero()) c[i] += LocalScalar(v(i, k), p_) * y[k];
    return c;
  }

  /// Structure of L / S where S is spanned by the columns of `sub` (which
  /// must lie in L).
  ModuleStructure quotient(const IntMatrix& sub) const {
    ModuleStructure out;
    if (sub.cols() == 0) {
      out.free_rank = static_cast<std::int64_t>(rank());
      return out;
    }
    IntMatrix y(rank(), sub.cols());
    for (std::size_t j = 0; j < sub.cols(); ++j) {
      auto c = reduced_coordinates(sub.column(j));
      if (!c) throw std::logic_error("Lattice::quotient: generator outside the lattice");
      for (std::size_t i = 0; i < rank(); ++i) y(i, j) = (*c)[i];
    }
    auto vals = elementary_divisors(y, p_);
    out.free_rank = static_cast<std::int64_t>(rank() - vals.size());
    for (auto e : vals) out.add_torsion(e);
    return out;
  }

 private:
  IntMatrix basis_;
  std::int64_t p_;
  SmithForm form_;
};

}  // namespace stiefel
