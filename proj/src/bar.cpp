#include "modvar/bar.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <unordered_map>

#include "modvar/errors.hpp"
#include "modvar/exactla/kernels.hpp"
#include "modvar/instantiate.hpp"

namespace modvar {

namespace {

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

std::uint64_t sat_pow(std::uint64_t base, std::size_t e) {
  std::uint64_t r = 1;
  for (std::size_t k = 0; k < e; ++k) r = sat_mul(r, base);
  return r;
}

void require_within(std::uint64_t size, std::uint64_t limit, const std::string& what) {
  if (size > limit)
    throw ResourceLimit(what + " needs " + (size == std::numeric_limits<std::uint64_t>::max()
                                                ? std::string("more than 2^64")
                                                : std::to_string(size)) +
                        " cells, cell limit is " + std::to_string(limit));
}

template <class F>
using Entry = std::pair<std::size_t, typename F::value_type>;

// Lookup tables shared by the row generators.
template <class F>
struct BarContext {
  using value_type = typename F::value_type;

  const FDAlgebra<F>& A;
  const F& f;
  std::size_t nA, dM, dN;
  std::vector<Vertex> vm, vn;
  // row r of N(b): entries (r', value); index b·dN + r
  std::vector<std::vector<Entry<F>>> n_row;
  // b·m in the M basis; index b·dM + m
  std::vector<std::vector<Entry<F>>> b_times_m;

  BarContext(const FDAlgebra<F>& alg, const Rep<F>& M, const Rep<F>& N)
      : A(alg), f(alg.field()), nA(alg.dim()), dM(M.total_dim()), dN(N.total_dim()) {
    for (std::size_t k = 0; k < dM; ++k) vm.push_back(M.vertex_of(k));
    for (std::size_t k = 0; k < dN; ++k) vn.push_back(N.vertex_of(k));
    n_row.resize(nA * dN);
    b_times_m.resize(nA * dM);
    for (std::size_t b = 0; b < nA; ++b) {
      const Path& p = A.basis_path(b);
      const Matrix<F> an = path_action(N, p);
      const std::size_t ns = N.offset(p.src), nt = N.offset(p.tgt);
      for (std::size_t r = 0; r < an.rows(); ++r)
        for (std::size_t c = 0; c < an.cols(); ++c)
          if (!f.is_zero(an(r, c))) n_row[b * dN + nt + r].emplace_back(ns + c, an(r, c));
      const Matrix<F> am = path_action(M, p);
      const std::size_t ms = M.offset(p.src), mt = M.offset(p.tgt);
      for (std::size_t r = 0; r < am.rows(); ++r)
        for (std::size_t c = 0; c < am.cols(); ++c)
          if (!f.is_zero(am(r, c))) b_times_m[b * dM + ms + c].emplace_back(mt + r, am(r, c));
    }
  }

  Vertex src(std::size_t b) const { return A.basis_path(b).src; }
  Vertex tgt(std::size_t b) const { return A.basis_path(b).tgt; }
};

// Digits of a D_i row: r, a_1..a_i, m.
struct RowDigits {
  std::size_t r = 0;
  std::vector<std::size_t> a;
  std::size_t m = 0;
};

RowDigits decode_row(std::uint64_t idx, std::size_t i, std::size_t nA, std::size_t dM) {
  RowDigits d;
  d.a.resize(i);
  d.m = static_cast<std::size_t>(idx % dM);
  idx /= dM;
  for (std::size_t k = i; k-- > 0;) {
    d.a[k] = static_cast<std::size_t>(idx % nA);
    idx /= nA;
  }
  d.r = static_cast<std::size_t>(idx);
  return d;
}

// Nonzero entries of row (r, a_1..a_i, m) of D_i, columns combined and sorted.
template <class F>
std::vector<Entry<F>> row_entries(const BarContext<F>& cx, const RowDigits& d) {
  const F& f = cx.f;
  const std::size_t i = d.a.size();
  std::vector<Entry<F>> out;
  // column index of (r', b_1..b_{i-1}, m')
  auto col = [&](std::size_t r, auto&& factor, std::size_t m) {
    std::uint64_t c = r;
    for (std::size_t k = 0; k + 1 < i; ++k) c = c * cx.nA + factor(k);
    return static_cast<std::size_t>(c * cx.dM + m);
  };
  // a_1 · φ(a_2 ⊗ … ⊗ m)
  for (const auto& [rp, v] : cx.n_row[d.a[0] * cx.dN + d.r])
    out.emplace_back(col(rp, [&](std::size_t k) { return d.a[k + 1]; }, d.m), v);
  // (−1)^k φ(… ⊗ a_k a_{k+1} ⊗ …), k = 1..i-1 (0-based positions k-1, k)
  for (std::size_t k = 1; k < i; ++k) {
    const bool neg = k % 2 == 1;
    for (const auto& [c, v] : cx.A.mul(d.a[k - 1], d.a[k])) {
      auto factor = [&](std::size_t t) {
        if (t < k - 1) return d.a[t];
        if (t == k - 1) return c;
        return d.a[t + 1];
      };
      out.emplace_back(col(d.r, factor, d.m), neg ? f.neg(v) : v);
    }
  }
  // (−1)^i φ(a_1 ⊗ … ⊗ a_{i-1} ⊗ a_i m)
  const bool neg = i % 2 == 1;
  for (const auto& [mp, v] : cx.b_times_m[d.a[i - 1] * cx.dM + d.m])
    out.emplace_back(col(d.r, [&](std::size_t k) { return d.a[k]; }, mp), neg ? f.neg(v) : v);

  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<Entry<F>> merged;
  for (auto& e : out) {
    if (!merged.empty() && merged.back().first == e.first)
      merged.back().second = f.add(merged.back().second, e.second);
    else
      merged.push_back(std::move(e));
  }
  std::erase_if(merged, [&](const auto& e) { return f.is_zero(e.second); });
  return merged;
}

// Unmatched junctions of a row, in order; empty optional when every junction
// is unmatched (the row is identically zero).
template <class F>
std::optional<std::vector<std::uint32_t>> junction_word(const BarContext<F>& cx, const RowDigits& d) {
  const std::size_t n = cx.A.n_vertices();
  const std::size_t i = d.a.size();
  std::vector<std::uint32_t> word;
  bool any_matched = false;
  auto junction = [&](Vertex x, Vertex y) {
    if (x == y)
      any_matched = true;
    else
      word.push_back(static_cast<std::uint32_t>(x * n + y));
  };
  junction(cx.vn[d.r], cx.tgt(d.a[0]));
  for (std::size_t k = 0; k + 1 < i; ++k) junction(cx.src(d.a[k]), cx.tgt(d.a[k + 1]));
  junction(cx.src(d.a[i - 1]), cx.vm[d.m]);
  if (!any_matched) return std::nullopt;
  return word;
}

template <class F>
void check_slice_size(const FDAlgebra<F>& A, const Rep<F>& M, const Rep<F>& N, std::size_t i,
                      std::uint64_t cell_limit) {
  if (i == 0) throw std::invalid_argument("bar slices start at i = 1");
  require_within(bar_c(A.dim(), M.total_dim(), N.total_dim(), i + 1), cell_limit,
                 "bar slice D_" + std::to_string(i));
}

}  // namespace

std::uint64_t bar_c(std::size_t dim_a, std::size_t dim_m, std::size_t dim_n, std::size_t i) {
  if (i == 0) return 0;
  return sat_mul(sat_pow(dim_a, i - 1), sat_mul(dim_m, dim_n));
}

template <class F>
BarSlice bar_slice(const FDAlgebra<F>& A, const Rep<F>& M, const Rep<F>& N, std::size_t i,
                   std::uint64_t cell_limit) {
  check_slice_size(A, M, N, i, cell_limit);
  BarSlice s;
  s.i = i;
  s.c_i = bar_c(A.dim(), M.total_dim(), N.total_dim(), i);
  s.c_next = bar_c(A.dim(), M.total_dim(), N.total_dim(), i + 1);
  if (s.c_next == 0 || s.c_i == 0) {
    s.k_i = s.c_i;
    return s;
  }
  const BarContext<F> cx(A, M, N);

  struct Block {
    std::vector<std::vector<Entry<F>>> rows;
  };
  std::map<std::vector<std::uint32_t>, Block> groups;
  for (std::uint64_t idx = 0; idx < s.c_next; ++idx) {
    const RowDigits d = decode_row(idx, i, cx.nA, cx.dM);
    auto word = junction_word(cx, d);
    if (!word) continue;
    auto entries = row_entries(cx, d);
    if (entries.empty()) continue;
    groups[*word].rows.push_back(std::move(entries));
  }

  std::vector<Block*> blocks;
  for (auto& [w, b] : groups) blocks.push_back(&b);
  s.blocks = blocks.size();
  std::vector<std::size_t> ranks(blocks.size(), 0), ncols(blocks.size(), 0);
  const long nb = static_cast<long>(blocks.size());
#pragma omp parallel for schedule(dynamic)
  for (long bi = 0; bi < nb; ++bi) {
    const Block& b = *blocks[static_cast<std::size_t>(bi)];
    std::unordered_map<std::size_t, std::size_t> local;
    for (const auto& row : b.rows)
      for (const auto& e : row) local.try_emplace(e.first, local.size());
    Matrix<F> m(A.field(), b.rows.size(), local.size());
    for (std::size_t r = 0; r < b.rows.size(); ++r)
      for (const auto& [c, v] : b.rows[r]) m(r, local.at(c)) = v;
    ranks[static_cast<std::size_t>(bi)] = reference::rank(m);
    ncols[static_cast<std::size_t>(bi)] = local.size();
  }
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    s.rank += ranks[k];
    if (blocks[k]->rows.size() * std::max<std::size_t>(ncols[k], 1) >=
        s.largest_block_rows * std::max<std::size_t>(s.largest_block_cols, 1)) {
      s.largest_block_rows = blocks[k]->rows.size();
      s.largest_block_cols = ncols[k];
    }
  }
  s.k_i = s.c_i - s.rank;
  return s;
}

template <class F>
Matrix<F> bar_hom_matrix(const FDAlgebra<F>& A, const Rep<F>& M, const Rep<F>& N, std::size_t i,
                         std::uint64_t cell_limit) {
  check_slice_size(A, M, N, i, cell_limit);
  const std::uint64_t rows = bar_c(A.dim(), M.total_dim(), N.total_dim(), i + 1);
  const std::uint64_t cols = bar_c(A.dim(), M.total_dim(), N.total_dim(), i);
  require_within(sat_mul(rows, cols), cell_limit, "dense bar matrix D_" + std::to_string(i));
  Matrix<F> D(A.field(), rows, cols);
  if (rows == 0 || cols == 0) return D;
  const BarContext<F> cx(A, M, N);
  for (std::uint64_t idx = 0; idx < rows; ++idx)
    for (const auto& [c, v] : row_entries(cx, decode_row(idx, i, cx.nA, cx.dM))) D(idx, c) = v;
  return D;
}

template <class F>
std::size_t bar_rank_reference(const FDAlgebra<F>& A, const Rep<F>& M, const Rep<F>& N, std::size_t i,
                               std::uint64_t cell_limit) {
  return reference::rank(bar_hom_matrix(A, M, N, i, cell_limit));
}

template <class F>
std::uint64_t bar_k(const FDAlgebra<F>& A, const Rep<F>& M, const Rep<F>& N, std::size_t i,
                    std::uint64_t cell_limit) {
  return bar_slice(A, M, N, i, cell_limit).k_i;
}

template <class F>
std::size_t ext_dim_bar(const FDAlgebra<F>& A, const Rep<F>& M, const Rep<F>& N, std::size_t i,
                        std::uint64_t cell_limit) {
  require_within(sat_mul(sat_pow(A.dim(), i + 1), sat_mul(M.total_dim(), N.total_dim())), cell_limit,
                 "bar-route ext^" + std::to_string(i));
  const std::uint64_t k_next = bar_k(A, M, N, i + 1, cell_limit);
  if (i == 0) return static_cast<std::size_t>(k_next);
  const std::uint64_t k_i = bar_k(A, M, N, i, cell_limit);
  return static_cast<std::size_t>(k_next + k_i - bar_c(A.dim(), M.total_dim(), N.total_dim(), i));
}

template <class F>
std::int64_t euler_bar(const FDAlgebra<F>& A, const Rep<F>& M, const Rep<F>& N, std::size_t t,
                       std::uint64_t cell_limit) {
  const auto k = static_cast<std::int64_t>(bar_k(A, M, N, t + 1, cell_limit));
  std::int64_t c = 0;
  for (std::size_t i = 0; i <= t; ++i) {
    const auto ci = static_cast<std::int64_t>(bar_c(A.dim(), M.total_dim(), N.total_dim(), i));
    c += (i % 2 == 0) ? -ci : ci;
  }
  return (t % 2 == 0 ? k : -k) + c;
}

template <class F>
Matrix<F> bar_differential(const FDAlgebra<F>& A, const Rep<F>& M, std::size_t i, std::uint64_t cell_limit) {
  if (i == 0) throw std::invalid_argument("bar differentials start at i = 1");
  const F& f = A.field();
  const std::size_t nA = A.dim(), dM = M.total_dim();
  const std::uint64_t cols = sat_mul(sat_pow(nA, i + 1), dM);
  const std::uint64_t rows = sat_mul(sat_pow(nA, i), dM);
  require_within(sat_mul(rows, cols), cell_limit, "bar differential d_" + std::to_string(i));
  Matrix<F> d(f, rows, cols);
  const BarContext<F> cx(A, M, M);
  std::vector<std::size_t> a(i + 1);
  for (std::uint64_t idx = 0; idx < cols; ++idx) {
    std::uint64_t x = idx;
    const std::size_t m = static_cast<std::size_t>(x % dM);
    x /= dM;
    for (std::size_t k = i + 1; k-- > 0;) {
      a[k] = static_cast<std::size_t>(x % nA);
      x /= nA;
    }
    auto row_of = [&](auto&& factor, std::size_t mm) {
      std::uint64_t r = 0;
      for (std::size_t k = 0; k < i; ++k) r = r * nA + factor(k);
      return r * dM + mm;
    };
    for (std::size_t k = 0; k < i; ++k) {
      const bool neg = k % 2 == 1;
      for (const auto& [c, v] : A.mul(a[k], a[k + 1])) {
        auto factor = [&](std::size_t t) { return t < k ? a[t] : (t == k ? c : a[t + 1]); };
        auto& e = d(row_of(factor, m), idx);
        e = f.add(e, neg ? f.neg(v) : v);
      }
    }
    const bool neg = i % 2 == 1;
    for (const auto& [mp, v] : cx.b_times_m[a[i] * dM + m]) {
      auto& e = d(row_of([&](std::size_t t) { return a[t]; }, mp), idx);
      e = f.add(e, neg ? f.neg(v) : v);
    }
  }
  return d;
}

nlohmann::json bar_slice_json(const BarSlice& s) {
  return {{"i", s.i},           {"c_i", s.c_i},       {"c_next", s.c_next},
          {"rank", s.rank},     {"k_i", s.k_i},       {"blocks", s.blocks},
          {"largest_block", {s.largest_block_rows, s.largest_block_cols}}};
}

#define MODVAR_INSTANTIATE_BAR(F)                                                                              \
  template BarSlice bar_slice<F>(const FDAlgebra<F>&, const Rep<F>&, const Rep<F>&, std::size_t, std::uint64_t); \
  template std::size_t bar_rank_reference<F>(const FDAlgebra<F>&, const Rep<F>&, const Rep<F>&, std::size_t,    \
                                             std::uint64_t);                                                    \
  template Matrix<F> bar_hom_matrix<F>(const FDAlgebra<F>&, const Rep<F>&, const Rep<F>&, std::size_t,          \
                                       std::uint64_t);                                                          \
  template std::uint64_t bar_k<F>(const FDAlgebra<F>&, const Rep<F>&, const Rep<F>&, std::size_t, std::uint64_t); \
  template std::size_t ext_dim_bar<F>(const FDAlgebra<F>&, const Rep<F>&, const Rep<F>&, std::size_t,           \
                                      std::uint64_t);                                                           \
  template std::int64_t euler_bar<F>(const FDAlgebra<F>&, const Rep<F>&, const Rep<F>&, std::size_t,            \
                                     std::uint64_t);                                                            \
  template Matrix<F> bar_differential<F>(const FDAlgebra<F>&, const Rep<F>&, std::size_t, std::uint64_t);
MODVAR_FOR_EACH_FIELD(MODVAR_INSTANTIATE_BAR)

}  // namespace modvar
