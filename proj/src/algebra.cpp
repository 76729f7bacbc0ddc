#include "modvar/algebra.hpp"

#include <algorithm>

#include "modvar/errors.hpp"
#include "modvar/exactla/kernels.hpp"
#include "modvar/instantiate.hpp"

namespace modvar {

template <class F>
std::vector<std::size_t> FDAlgebra<F>::radical_basis() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].length() >= 1) out.push_back(i);
  return out;
}

template <class F>
std::optional<std::size_t> FDAlgebra<F>::basis_index(const Path& p) const {
  auto it = normal_forms_.find(key(p));
  if (it == normal_forms_.end() || it->second.size() != 1) return std::nullopt;
  const auto& [idx, c] = it->second.front();
  if (!field_.equal(c, field_.one()) || !(basis_[idx] == p)) return std::nullopt;
  return idx;
}

template <class F>
typename FDAlgebra<F>::SparseVec FDAlgebra<F>::reduce(const Path& p) const {
  if (p.length() >= spec_.trunc) return {};
  auto it = normal_forms_.find(key(p));
  if (it == normal_forms_.end()) throw std::logic_error("path missing from the enumerated path space");
  return it->second;
}

template <class F>
typename FDAlgebra<F>::SparseVec FDAlgebra<F>::left_arrow(ArrowId a, std::size_t b) const {
  auto p = compose(Path::from_arrows(quiver(), {a}), basis_.at(b));
  return p ? reduce(*p) : SparseVec{};
}

template <class F>
typename FDAlgebra<F>::SparseVec FDAlgebra<F>::right_arrow(ArrowId a, std::size_t b) const {
  auto p = compose(basis_.at(b), Path::from_arrows(quiver(), {a}));
  return p ? reduce(*p) : SparseVec{};
}

namespace {

std::vector<Path> enumerate_paths(const Quiver& q, std::size_t max_len_exclusive) {
  std::vector<Path> all;
  std::vector<Path> level;
  for (Vertex v = 0; v < q.n_vertices(); ++v) level.push_back(Path::trivial(v));
  for (std::size_t len = 0; len < max_len_exclusive && !level.empty(); ++len) {
    all.insert(all.end(), level.begin(), level.end());
    if (all.size() > kMaxPathSpace)
      throw ResourceLimit("path space of length < " + std::to_string(max_len_exclusive) + " exceeds " +
                          std::to_string(kMaxPathSpace) + " paths");
    std::vector<Path> next;
    for (const auto& p : level)
      for (ArrowId a = 0; a < q.n_arrows(); ++a)
        if (q.arrow(a).src == p.tgt) {
          Path e = p;
          e.arrows.push_back(a);
          e.tgt = q.arrow(a).tgt;
          next.push_back(std::move(e));
        }
    level = std::move(next);
  }
  return all;
}

}  // namespace

template <class F>
FDAlgebra<F> build_algebra(const AlgebraSpec& spec, const F& field) {
  spec.validate();
  const Quiver& q = spec.quiver;
  const std::size_t L = spec.trunc;

  std::vector<Path> paths = enumerate_paths(q, L);
  std::sort(paths.begin(), paths.end(), [&](const Path& a, const Path& b) { return path_less(q, a, b); });
  const std::size_t N = paths.size();

  // Columns run from the largest path to the smallest, so the leftmost pivot
  // of each ideal row is its largest path.
  std::map<std::pair<Vertex, std::vector<ArrowId>>, std::size_t> column;
  for (std::size_t k = 0; k < N; ++k) column[{paths[k].src, paths[k].arrows}] = N - 1 - k;
  auto col_of = [&](const Path& p) { return column.at({p.src, p.arrows}); };
  auto path_of_col = [&](std::size_t c) -> const Path& { return paths[N - 1 - c]; };

  std::vector<std::vector<typename F::value_type>> rows;
  for (const auto& rel : spec.relations) {
    std::vector<typename F::value_type> v(N, field.zero());
    for (const auto& t : rel) {
      if (t.path.length() >= L) continue;
      auto c = col_of(t.path);
      v[c] = field.add(v[c], field.from_int(t.coeff));
    }
    rows.push_back(std::move(v));
  }

  auto to_matrix = [&](const std::vector<std::vector<typename F::value_type>>& rs) {
    Matrix<F> m(field, rs.size(), N);
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < N; ++j) m(i, j) = rs[i][j];
    return m;
  };

  // Two-sided closure under multiplication by arrows, products of length ≥ L
  // discarded.
  Echelon<F> ideal = rref(to_matrix(rows));
  for (;;) {
    std::vector<std::vector<typename F::value_type>> gens;
    for (std::size_t i = 0; i < ideal.rank(); ++i) {
      auto r = ideal.reduced.row(i);
      gens.emplace_back(r.begin(), r.end());
    }
    const std::size_t base = gens.size();
    for (std::size_t i = 0; i < base; ++i) {
      for (ArrowId a = 0; a < q.n_arrows(); ++a) {
        const Path arrow = Path::from_arrows(q, {a});
        std::vector<typename F::value_type> left(N, field.zero()), right(N, field.zero());
        bool any_left = false, any_right = false;
        for (std::size_t c = 0; c < N; ++c) {
          const auto& x = gens[i][c];
          if (field.is_zero(x)) continue;
          const Path& p = path_of_col(c);
          if (auto lp = compose(arrow, p); lp && lp->length() < L) {
            auto lc = col_of(*lp);
            left[lc] = field.add(left[lc], x);
            any_left = true;
          }
          if (auto rp = compose(p, arrow); rp && rp->length() < L) {
            auto rc = col_of(*rp);
            right[rc] = field.add(right[rc], x);
            any_right = true;
          }
        }
        if (any_left) gens.push_back(std::move(left));
        if (any_right) gens.push_back(std::move(right));
      }
    }
    Echelon<F> next = rref(to_matrix(gens));
    const bool stable = next.rank() == ideal.rank();
    ideal = std::move(next);
    if (stable) break;
  }

  FDAlgebra<F> A;
  A.field_ = field;
  A.spec_ = spec;
  A.path_space_dim_ = N;

  std::vector<bool> is_pivot(N, false);
  for (auto c : ideal.pivot_cols) is_pivot[c] = true;
  // Basis in ascending path order = descending column order.
  std::vector<std::size_t> basis_of_col(N, SIZE_MAX);
  for (std::size_t k = 0; k < N; ++k) {
    const std::size_t c = N - 1 - k;
    if (is_pivot[c]) continue;
    basis_of_col[c] = A.basis_.size();
    A.basis_.push_back(paths[k]);
  }
  for (std::size_t c = 0; c < N; ++c) {
    typename FDAlgebra<F>::SparseVec nf;
    if (!is_pivot[c]) nf.emplace_back(basis_of_col[c], field.one());
    A.normal_forms_[{path_of_col(c).src, path_of_col(c).arrows}] = std::move(nf);
  }
  for (std::size_t i = 0; i < ideal.rank(); ++i) {
    const std::size_t pc = ideal.pivot_cols[i];
    typename FDAlgebra<F>::SparseVec nf;
    for (std::size_t c = 0; c < N; ++c) {
      if (is_pivot[c]) continue;
      const auto& x = ideal.reduced(i, c);
      if (!field.is_zero(x)) nf.emplace_back(basis_of_col[c], field.neg(x));
    }
    std::sort(nf.begin(), nf.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    A.normal_forms_[{path_of_col(pc).src, path_of_col(pc).arrows}] = std::move(nf);
  }

  const std::size_t n = q.n_vertices();
  A.idempotents_.assign(n, SIZE_MAX);
  A.between_.assign(n * n, {});
  for (std::size_t b = 0; b < A.basis_.size(); ++b) {
    const Path& p = A.basis_[b];
    if (p.length() == 0) A.idempotents_[p.src] = b;
    A.between_[p.src * n + p.tgt].push_back(b);
  }
  for (Vertex v = 0; v < n; ++v)
    if (A.idempotents_[v] == SIZE_MAX) throw std::logic_error("trivial path eliminated; relations not admissible");

  const std::size_t d = A.basis_.size();
  A.mult_.assign(d * d, {});
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y)
      if (auto p = compose(A.basis_[x], A.basis_[y])) A.mult_[x * d + y] = A.reduce(*p);

  for (const auto& p : A.basis_) {
    if (p.length() + 1 != L) continue;
    for (const auto& a : q.arrows()) {
      if (a.src == p.tgt || a.tgt == p.src) {
        A.warning_ = "basis path '" + to_string(q, p) + "' has length L-1 = " + std::to_string(L - 1) +
                     " and extends by an arrow; the quotient may depend on the truncation bound";
        break;
      }
    }
    if (A.warning_) break;
  }
  return A;
}

template <class F>
bool check_truncation_stable(const AlgebraSpec& spec, const F& field) {
  AlgebraSpec longer = spec;
  longer.trunc = spec.trunc + 1;
  return build_algebra(spec, field).dim() == build_algebra(longer, field).dim();
}

namespace {

template <class F>
std::size_t local_index(const std::vector<std::size_t>& list, std::size_t global) {
  auto it = std::lower_bound(list.begin(), list.end(), global);
  if (it == list.end() || *it != global) throw std::logic_error("basis element outside the expected block");
  return static_cast<std::size_t>(it - list.begin());
}

}  // namespace

template <class F>
Rep<F> projective_module(const FDAlgebra<F>& A, Vertex i) {
  const Quiver& q = A.quiver();
  if (i >= q.n_vertices()) throw InputError("vertex " + std::to_string(i) + " out of range");
  std::vector<std::size_t> dims(q.n_vertices());
  for (Vertex v = 0; v < q.n_vertices(); ++v) dims[v] = A.paths_between(i, v).size();
  Rep<F> P = Rep<F>::zero(q, A.field(), dims);
  for (ArrowId a = 0; a < q.n_arrows(); ++a) {
    const auto& src_list = A.paths_between(i, q.arrow(a).src);
    const auto& tgt_list = A.paths_between(i, q.arrow(a).tgt);
    for (std::size_t k = 0; k < src_list.size(); ++k)
      for (const auto& [b, c] : A.left_arrow(a, src_list[k])) P.mats[a](local_index<F>(tgt_list, b), k) = c;
  }
  return P;
}

template <class F>
Rep<F> simple_module(const FDAlgebra<F>& A, Vertex i) {
  const Quiver& q = A.quiver();
  if (i >= q.n_vertices()) throw InputError("vertex " + std::to_string(i) + " out of range");
  std::vector<std::size_t> dims(q.n_vertices(), 0);
  dims[i] = 1;
  return Rep<F>::zero(q, A.field(), dims);
}

template <class F>
Rep<F> injective_module(const FDAlgebra<F>& A, Vertex i) {
  const Quiver& q = A.quiver();
  if (i >= q.n_vertices()) throw InputError("vertex " + std::to_string(i) + " out of range");
  std::vector<std::size_t> dims(q.n_vertices());
  for (Vertex w = 0; w < q.n_vertices(); ++w) dims[w] = A.paths_between(w, i).size();
  Rep<F> I = Rep<F>::zero(q, A.field(), dims);
  for (ArrowId a = 0; a < q.n_arrows(); ++a) {
    const auto& src_list = A.paths_between(q.arrow(a).src, i);
    const auto& tgt_list = A.paths_between(q.arrow(a).tgt, i);
    // (a·φ)(x) = φ(x ∘ a) for x with source tgt(a)
    for (std::size_t k = 0; k < tgt_list.size(); ++k)
      for (const auto& [b, c] : A.right_arrow(a, tgt_list[k])) I.mats[a](k, local_index<F>(src_list, b)) = c;
  }
  return I;
}

template <class F>
Matrix<F> path_action(const Rep<F>& M, const Path& p) {
  Matrix<F> acc = Matrix<F>::identity(M.field, M.dims[p.src]);
  for (ArrowId a : p.arrows) acc = M.mats[a] * acc;
  return acc;
}

#define MODVAR_INSTANTIATE_ALGEBRA(F)                                         \
  template class FDAlgebra<F>;                                                \
  template FDAlgebra<F> build_algebra<F>(const AlgebraSpec&, const F&);       \
  template bool check_truncation_stable<F>(const AlgebraSpec&, const F&);     \
  template Rep<F> projective_module<F>(const FDAlgebra<F>&, Vertex);          \
  template Rep<F> simple_module<F>(const FDAlgebra<F>&, Vertex);              \
  template Rep<F> injective_module<F>(const FDAlgebra<F>&, Vertex);           \
  template Matrix<F> path_action<F>(const Rep<F>&, const Path&);
MODVAR_FOR_EACH_FIELD(MODVAR_INSTANTIATE_ALGEBRA)

}  // namespace modvar
