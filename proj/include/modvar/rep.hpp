#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "modvar/algebra.hpp"
#include "modvar/module.hpp"
#include "modvar/rng.hpp"

namespace modvar {

struct RelationReport {
  bool ok = true;
  std::vector<std::size_t> failing_relations;
  // J^L acts as zero (only informative when the quiver has oriented cycles).
  bool truncation_ok = true;

  std::string describe() const;
};

/// Throws InputError when matrix shapes do not match dims and the quiver.
template <class F>
void check_shapes(const Quiver& q, const Rep<F>& M);

template <class F>
RelationReport check_relations(const FDAlgebra<F>& A, const Rep<F>& M);

template <class F>
Rep<F> direct_sum(const Rep<F>& M, const Rep<F>& N);

/// Per-vertex invertible matrices acting within one dimension-vector stratum.
template <class F>
struct GroupElement {
  std::vector<Matrix<F>> blocks;
};

/// a ↦ g_tgt(a)^{-1} · M(a) · g_src(a). Throws InputError for a singular block.
template <class F>
Rep<F> conjugate(const Quiver& q, const GroupElement<F>& g, const Rep<F>& M);

template <class F>
GroupElement<F> random_group_element(const F& field, const std::vector<std::size_t>& dims, Rng& rng);

/// Uniform point of mod(A, d). Only valid for path algebras of acyclic quivers
/// (no relations), where mod(A, d) is an affine space.
template <class F>
Rep<F> random_rep(const FDAlgebra<F>& A, const std::vector<std::size_t>& dims, Rng& rng);

enum class IsoVerdict { Iso, NotIso, Inconclusive };
std::string to_string(IsoVerdict v);

inline constexpr std::size_t kDefaultIsoTrials = 8;

/// Monte Carlo isomorphism test. NotIso is certain (dimension vectors differ,
/// Hom(M,N) = 0, or hom(M,M) != hom(M,N)); Iso is certified by an invertible
/// sampled element of Hom(M,N); otherwise Inconclusive.
template <class F>
IsoVerdict iso_test(const FDAlgebra<F>& A, const Rep<F>& M, const Rep<F>& N, std::size_t trials, Rng& rng);

}  // namespace modvar
