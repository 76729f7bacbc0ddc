#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

#include "modvar/exactla/matrix.hpp"
#include "modvar/quiver.hpp"

namespace modvar {

/// A point of mod(A, d): one vector space per vertex, one matrix per arrow.
/// mats[a] has shape dims[tgt(a)] × dims[src(a)]. The total space is the
/// concatenation of the vertex spaces in vertex order.
template <class F>
struct Rep {
  F field{};
  std::vector<std::size_t> dims;
  std::vector<Matrix<F>> mats;

  static Rep zero(const Quiver& q, const F& field, std::vector<std::size_t> dims) {
    Rep r;
    r.field = field;
    r.dims = std::move(dims);
    for (const auto& a : q.arrows()) r.mats.emplace_back(field, r.dims[a.tgt], r.dims[a.src]);
    return r;
  }

  std::size_t total_dim() const { return std::accumulate(dims.begin(), dims.end(), std::size_t{0}); }
  std::size_t offset(Vertex v) const {
    return std::accumulate(dims.begin(), dims.begin() + static_cast<std::ptrdiff_t>(v), std::size_t{0});
  }
  /// Vertex of the k-th vector of the total space.
  Vertex vertex_of(std::size_t k) const {
    for (Vertex v = 0; v < dims.size(); ++v) {
      if (k < dims[v]) return v;
      k -= dims[v];
    }
    return dims.size();
  }

  friend bool operator==(const Rep&, const Rep&) = default;
};

/// A vertex-blocked linear map between representations; blocks[v] has shape
/// target.dims[v] × source.dims[v].
template <class F>
struct Morphism {
  std::vector<Matrix<F>> blocks;

  static Morphism zero(const F& field, const std::vector<std::size_t>& src_dims,
                       const std::vector<std::size_t>& tgt_dims) {
    Morphism m;
    for (std::size_t v = 0; v < src_dims.size(); ++v) m.blocks.emplace_back(field, tgt_dims[v], src_dims[v]);
    return m;
  }

  /// this ∘ other
  Morphism after(const Morphism& other) const {
    Morphism m;
    for (std::size_t v = 0; v < blocks.size(); ++v) m.blocks.push_back(blocks[v] * other.blocks[v]);
    return m;
  }

  bool is_zero() const {
    for (const auto& b : blocks)
      if (!b.is_zero()) return false;
    return true;
  }
};

}  // namespace modvar
