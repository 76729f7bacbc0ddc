#pragma once

// Row-reduction kernels. The default entry points parallelize the
// elimination sweep over rows with OpenMP; namespace `reference` holds the
// plain serial versions, kept for cross-checking and benchmarking.
//
// Pivoting convention (both paths): leftmost nonzero column, first row at or
// below the current position holding a nonzero, pivot rows normalized to 1.
// Both paths therefore produce identical echelon forms.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "modvar/exactla/matrix.hpp"

namespace modvar {

template <class F>
struct Echelon {
  Matrix<F> reduced;
  std::vector<std::size_t> pivot_cols;

  std::size_t rank() const { return pivot_cols.size(); }
};

namespace detail {

// Below this many scalar updates per sweep the thread fan-out costs more
// than it saves.
inline constexpr long kParallelThreshold = 1L << 15;

template <class F>
std::optional<std::size_t> find_pivot(const Matrix<F>& m, std::size_t from_row, std::size_t col) {
  for (std::size_t i = from_row; i < m.rows(); ++i)
    if (!m.field().is_zero(m(i, col))) return i;
  return std::nullopt;
}

template <class F>
void normalize_row(Matrix<F>& m, std::size_t r, std::size_t c) {
  const F& f = m.field();
  auto inv = f.inv(m(r, c));
  f.scale(m.row(r).subspan(c), inv);
}

// full: eliminate above and below (RREF); otherwise only below (REF).
template <class F>
Echelon<F> eliminate(Matrix<F> m, bool full, bool parallel) {
  const F& f = m.field();
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    auto p = find_pivot(m, r, c);
    if (!p) continue;
    m.swap_rows(r, *p);
    normalize_row(m, r, c);
    const auto pivot_row = std::span<const typename F::value_type>(m.row(r).subspan(c));
    const long first = full ? 0 : static_cast<long>(r + 1);
    const long last = static_cast<long>(rows);
    const long work = (last - first) * static_cast<long>(cols - c);
    const long rr = static_cast<long>(r);
#pragma omp parallel for schedule(static) if (parallel && work > kParallelThreshold)
    for (long i = first; i < last; ++i) {
      if (i == rr) continue;
      auto target = m.row(static_cast<std::size_t>(i)).subspan(c);
      if (f.is_zero(target[0])) continue;
      auto factor = target[0];
      f.sub_scaled(target, pivot_row, factor);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

}  // namespace detail

template <class F>
Echelon<F> rref(Matrix<F> m) {
  return detail::eliminate(std::move(m), true, true);
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
  if (m.empty()) return 0;
  return detail::eliminate(m, false, true).rank();
}

namespace reference {

template <class F>
Echelon<F> rref(Matrix<F> m) {
  return detail::eliminate(std::move(m), true, false);
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
  if (m.empty()) return 0;
  return detail::eliminate(m, false, false).rank();
}

}  // namespace reference

/// Columns form a basis of the right null space, one per free column of the
/// RREF, ordered by free column index. The basis vector for free column j has
/// a 1 at j and zeros at every other free column.
template <class F>
Matrix<F> kernel_basis(const Matrix<F>& m) {
  const F& f = m.field();
  auto e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix<F> basis(f, m.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const std::size_t j = free_cols[k];
    basis(j, k) = f.one();
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) basis(e.pivot_cols[i], k) = f.neg(e.reduced(i, j));
  }
  return basis;
}

/// Solves a·X = B for all columns of B at once; free variables are set to
/// zero. Empty if some column of B is outside the column span of a.
template <class F>
std::optional<Matrix<F>> solve_many(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: row count mismatch");
  const F& f = a.field();
  auto e = rref(hstack(a, b));
  Matrix<F> x(f, a.cols(), b.cols());
  for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) {
    const std::size_t pc = e.pivot_cols[i];
    if (pc >= a.cols()) return std::nullopt;
    for (std::size_t k = 0; k < b.cols(); ++k) x(pc, k) = e.reduced(i, a.cols() + k);
  }
  return x;
}

template <class F>
std::optional<std::vector<typename F::value_type>> solve(const Matrix<F>& a,
                                                         std::span<const typename F::value_type> b) {
  if (a.rows() != b.size()) throw std::invalid_argument("solve: right-hand side length mismatch");
  Matrix<F> rhs(a.field(), b.size(), 1);
  for (std::size_t i = 0; i < b.size(); ++i) rhs(i, 0) = b[i];
  auto x = solve_many(a, rhs);
  if (!x) return std::nullopt;
  return x->column(0);
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  if (rank(a) != a.rows()) return std::nullopt;
  return solve_many(a, Matrix<F>::identity(a.field(), a.rows()));
}

/// Columns of m that are pivot columns of its RREF: a basis of the column space
/// drawn from m's own columns.
template <class F>
Matrix<F> column_space_basis(const Matrix<F>& m) {
  auto e = rref(m);
  Matrix<F> out(m.field(), m.rows(), e.rank());
  for (std::size_t k = 0; k < e.rank(); ++k)
    for (std::size_t r = 0; r < m.rows(); ++r) out(r, k) = m(r, e.pivot_cols[k]);
  return out;
}

}  // namespace modvar
