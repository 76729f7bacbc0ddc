#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modvar/exactla/matrix.hpp"
#include "modvar/module.hpp"
#include "modvar/quiver.hpp"

namespace modvar {

/// Upper bound on the number of paths of length < L enumerated while
/// building an algebra.
inline constexpr std::size_t kMaxPathSpace = 20000;

/// A = KQ / (<R> + J^L) realized by a monomial basis of reduced paths and its
/// structure constants. Immutable after construction.
template <class F>
class FDAlgebra {
 public:
  using value_type = typename F::value_type;
  using SparseVec = std::vector<std::pair<std::size_t, value_type>>;

  const F& field() const { return field_; }
  const AlgebraSpec& spec() const { return spec_; }
  const Quiver& quiver() const { return spec_.quiver; }
  std::size_t n_vertices() const { return spec_.quiver.n_vertices(); }
  std::size_t dim() const { return basis_.size(); }

  const std::vector<Path>& basis() const { return basis_; }
  const Path& basis_path(std::size_t i) const { return basis_.at(i); }
  std::size_t idempotent(Vertex v) const { return idempotents_.at(v); }
  std::vector<std::size_t> radical_basis() const;
  std::optional<std::size_t> basis_index(const Path& p) const;

  /// Basis indices of paths src -> tgt, ascending.
  const std::vector<std::size_t>& paths_between(Vertex src, Vertex tgt) const {
    return between_.at(src * n_vertices() + tgt);
  }

  /// Structure constants: basis_i ∘ basis_j (j acts first).
  const SparseVec& mul(std::size_t i, std::size_t j) const { return mult_.at(i * dim() + j); }
  /// Normal form of an arbitrary path; zero for length ≥ L.
  SparseVec reduce(const Path& p) const;
  /// a ∘ basis_b and basis_b ∘ a for an arrow a.
  SparseVec left_arrow(ArrowId a, std::size_t b) const;
  SparseVec right_arrow(ArrowId a, std::size_t b) const;

  /// Number of paths of length < L (before reduction).
  std::size_t path_space_dim() const { return path_space_dim_; }
  /// Set when a basis path of length L-1 can be extended by an arrow, i.e.
  /// the truncation J^L may be cutting off nonzero elements of KQ/<R>.
  const std::optional<std::string>& truncation_warning() const { return warning_; }

  template <class G>
  friend FDAlgebra<G> build_algebra(const AlgebraSpec& spec, const G& field);

 private:
  using PathKey = std::pair<Vertex, std::vector<ArrowId>>;
  static PathKey key(const Path& p) { return {p.src, p.arrows}; }

  F field_{};
  AlgebraSpec spec_;
  std::vector<Path> basis_;
  std::vector<std::size_t> idempotents_;
  std::vector<std::vector<std::size_t>> between_;
  std::vector<SparseVec> mult_;
  std::map<PathKey, SparseVec> normal_forms_;
  std::size_t path_space_dim_ = 0;
  std::optional<std::string> warning_;
};

/// Throws InputError when spec.validate() fails, ResourceLimit when the path
/// space exceeds kMaxPathSpace.
template <class F>
FDAlgebra<F> build_algebra(const AlgebraSpec& spec, const F& field);

/// dim A(L) == dim A(L+1).
template <class F>
bool check_truncation_stable(const AlgebraSpec& spec, const F& field);

/// P(i) = A·e_i: basis paths with source i, action by left multiplication.
template <class F>
Rep<F> projective_module(const FDAlgebra<F>& A, Vertex i);

template <class F>
Rep<F> simple_module(const FDAlgebra<F>& A, Vertex i);

/// I(i) = D(e_i A): the dual of the paths with target i; arrows act by the
/// transpose of right multiplication.
template <class F>
Rep<F> injective_module(const FDAlgebra<F>& A, Vertex i);

/// M(path) for a module M: product of arrow matrices, first arrow rightmost.
template <class F>
Matrix<F> path_action(const Rep<F>& M, const Path& p);

}  // namespace modvar
