#pragma once

#include <cstddef>
#include <vector>

#include "modvar/exactla/matrix.hpp"
#include "modvar/module.hpp"
#include "modvar/quiver.hpp"

namespace modvar {

/// A basis of Hom_A(source, target) as vertex-blocked matrix tuples.
template <class F>
struct HomSpace {
  std::vector<std::size_t> source_dims;
  std::vector<std::size_t> target_dims;
  std::vector<Morphism<F>> basis;

  std::size_t dim() const { return basis.size(); }
};

/// Solves f_tgt(a)·M(a) = N(a)·f_src(a) for all arrows a.
template <class F>
HomSpace<F> hom_basis(const Quiver& q, const Rep<F>& M, const Rep<F>& N);

template <class F>
std::size_t hom_dim(const Quiver& q, const Rep<F>& M, const Rep<F>& N);

/// True iff f_tgt(a)·M(a) = N(a)·f_src(a) for every arrow.
template <class F>
bool is_homomorphism(const Quiver& q, const Rep<F>& M, const Rep<F>& N, const Morphism<F>& f);

}  // namespace modvar
