#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "modvar/homology.hpp"

namespace modvar {

using GVector = std::vector<std::int64_t>;

/// νP_1 -> νP_0 for a minimal presentation, with ν P(i) = I(i).
template <class F>
struct NakayamaImage {
  Rep<F> source;  // ⊕ I(w_t) over the summands of P_1
  Rep<F> target;  // ⊕ I(v_s) over the summands of P_0
  Morphism<F> map;
};

template <class F>
NakayamaImage<F> nakayama_image(const Engine<F>& E, const Presentation<F>& pres);

/// τM = Ker(ν p_1) as a submodule of νP_1. Defined up to isomorphism.
template <class F>
Rep<F> tau(const Engine<F>& E, const Rep<F>& M);

/// g_i = [P_1:P(i)] − [P_0:P(i)] from the minimal presentation.
template <class F>
GVector g_vector(const Engine<F>& E, const Rep<F>& M);

/// g_i = −hom(M, S(i)) + ext¹(M, S(i)).
template <class F>
GVector g_vector_via_simples(const Engine<F>& E, const Rep<F>& M);

/// E(M, N) = hom(N, τM).
template <class F>
std::size_t e_invariant(const Engine<F>& E, const Rep<F>& M, const Rep<F>& N);

/// hom(M, N) + Σ_i g_i(M)·dim N_i.
template <class F>
std::int64_t e_invariant_expansion(const Engine<F>& E, const Rep<F>& M, const Rep<F>& N);

template <class F>
bool is_brick(const Engine<F>& E, const Rep<F>& M);
template <class F>
bool is_rigid(const Engine<F>& E, const Rep<F>& M);
template <class F>
bool is_tau_rigid(const Engine<F>& E, const Rep<F>& M);

}  // namespace modvar
