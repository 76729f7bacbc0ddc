#pragma once

// Ext via the standard complex. Hom_A(A ⊗ A^{⊗(i-1)} ⊗ M, N) is identified
// with Hom_K(A^{⊗(i-1)} ⊗ M, N) (dimension c_i), and Hom_A(d, N) becomes a
// c_{i+1} × c_i matrix D_i:
//
//   (D_i φ)(a_1 ⊗ … ⊗ a_i ⊗ m) = a_1·φ(a_2 ⊗ … ⊗ m)
//       + Σ_{k=1}^{i-1} (−1)^k φ(… ⊗ a_k a_{k+1} ⊗ …)
//       + (−1)^i φ(a_1 ⊗ … ⊗ a_{i-1} ⊗ a_i m).
//
// Coordinates: φ and D_i φ are stored row-major with the N-basis index as the
// most significant digit, then the tensor factors left to right, then the
// M-basis index.
//
// A basis tensor only pairs with basis tensors of matching endpoints, so D_i
// splits into independent diagonal blocks. The default rank routine reduces
// the blocks in parallel; the reference routine reduces the assembled dense
// matrix.

#include <cstddef>
#include <cstdint>

#include <nlohmann/json.hpp>

#include "modvar/algebra.hpp"
#include "modvar/module.hpp"

namespace modvar {

/// c_i = dim(A)^{i-1}·dim(M)·dim(N) for i >= 1; c_0 = 0. Saturates at UINT64_MAX.
std::uint64_t bar_c(std::size_t dim_a, std::size_t dim_m, std::size_t dim_n, std::size_t i);

struct BarSlice {
  std::size_t i = 0;
  std::uint64_t c_i = 0;       // columns of D_i
  std::uint64_t c_next = 0;    // rows of D_i
  std::size_t rank = 0;
  std::uint64_t k_i = 0;       // c_i − rank
  std::size_t blocks = 0;
  std::size_t largest_block_rows = 0;
  std::size_t largest_block_cols = 0;
};

/// Rank data of D_i (i >= 1). Throws ResourceLimit when c_{i+1} > cell_limit.
template <class F>
BarSlice bar_slice(const FDAlgebra<F>& A, const Rep<F>& M, const Rep<F>& N, std::size_t i,
                   std::uint64_t cell_limit);

/// Same value computed from the assembled dense D_i by serial elimination.
template <class F>
std::size_t bar_rank_reference(const FDAlgebra<F>& A, const Rep<F>& M, const Rep<F>& N, std::size_t i,
                               std::uint64_t cell_limit);

/// Dense D_i.
template <class F>
Matrix<F> bar_hom_matrix(const FDAlgebra<F>& A, const Rep<F>& M, const Rep<F>& N, std::size_t i,
                         std::uint64_t cell_limit);

/// k_i = dim Ker D_i for i >= 1.
template <class F>
std::uint64_t bar_k(const FDAlgebra<F>& A, const Rep<F>& M, const Rep<F>& N, std::size_t i, std::uint64_t cell_limit);

/// ext^i = k_{i+1} + k_i − c_i (i >= 1), ext^0 = k_1. Requires
/// dim(A)^{i+1}·dim(M)·dim(N) <= cell_limit.
template <class F>
std::size_t ext_dim_bar(const FDAlgebra<F>& A, const Rep<F>& M, const Rep<F>& N, std::size_t i,
                        std::uint64_t cell_limit);

/// (−1)^t k_{t+1} + Σ_{i=0}^t (−1)^{i+1} c_i.
template <class F>
std::int64_t euler_bar(const FDAlgebra<F>& A, const Rep<F>& M, const Rep<F>& N, std::size_t t,
                       std::uint64_t cell_limit);

/// The K-linear map d_i^M: A^{⊗(i+1)} ⊗ M -> A^{⊗i} ⊗ M (i >= 1), basis
/// tensor-lexicographic with the M index last.
template <class F>
Matrix<F> bar_differential(const FDAlgebra<F>& A, const Rep<F>& M, std::size_t i, std::uint64_t cell_limit);

nlohmann::json bar_slice_json(const BarSlice& s);

}  // namespace modvar
