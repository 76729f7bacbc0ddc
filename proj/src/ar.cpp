#include "modvar/ar.hpp"

#include "modvar/exactla/kernels.hpp"
#include "modvar/instantiate.hpp"
#include "modvar/rep.hpp"

namespace modvar {

namespace {

template <class F>
Rep<F> injective_sum(const FDAlgebra<F>& A, const std::vector<Vertex>& gens) {
  Rep<F> S = Rep<F>::zero(A.quiver(), A.field(), std::vector<std::size_t>(A.n_vertices(), 0));
  for (auto v : gens) S = direct_sum(S, injective_module(A, v));
  return S;
}

}  // namespace

// A component u ∈ e_j A e_i of p_1 (summand t at j = w_t, summand s at
// i = v_s) induces I(j) -> I(i); at vertex w its entry in row y (a path
// w -> i) and column x (a path w -> j) is the coefficient of x in u·y.
template <class F>
NakayamaImage<F> nakayama_image(const Engine<F>& E, const Presentation<F>& pres) {
  const FDAlgebra<F>& A = E.algebra();
  const F& f = A.field();
  const std::size_t n = A.n_vertices();
  const auto& tg = pres.P1.generators;
  const auto& sg = pres.P0.generators;
  NakayamaImage<F> out;
  out.source = injective_sum(A, tg);
  out.target = injective_sum(A, sg);
  out.map = Morphism<F>::zero(f, out.source.dims, out.target.dims);
  for (std::size_t t = 0; t < tg.size(); ++t) {
    const Vertex j = tg[t];
    const auto& own = A.paths_between(j, j);
    std::size_t triv = 0;
    while (own[triv] != A.idempotent(j)) ++triv;
    const auto image = pres.p1.blocks[j].column(pres.P1.summand_offset(A, t, j) + triv);
    std::size_t pos = 0;
    for (std::size_t s = 0; s < sg.size(); ++s) {
      const Vertex i = sg[s];
      for (auto u : A.paths_between(i, j)) {
        const auto c = image[pos++];
        if (f.is_zero(c)) continue;
        for (Vertex w = 0; w < n; ++w) {
          const auto& xs = A.paths_between(w, j);
          const auto& ys = A.paths_between(w, i);
          std::size_t col0 = 0, row0 = 0;
          for (std::size_t k = 0; k < t; ++k) col0 += A.paths_between(w, tg[k]).size();
          for (std::size_t k = 0; k < s; ++k) row0 += A.paths_between(w, sg[k]).size();
          for (std::size_t yb = 0; yb < ys.size(); ++yb)
            for (const auto& [x, v] : A.mul(u, ys[yb])) {
              std::size_t xa = 0;
              while (xs[xa] != x) ++xa;
              auto& e = out.map.blocks[w](row0 + yb, col0 + xa);
              e = f.add(e, f.mul(c, v));
            }
        }
      }
    }
  }
  return out;
}

template <class F>
Rep<F> tau(const Engine<F>& E, const Rep<F>& M) {
  const auto nu = nakayama_image(E, E.minimal_presentation(M));
  return kernel_submodule(E.algebra().quiver(), nu.source, nu.map);
}

template <class F>
GVector g_vector(const Engine<F>& E, const Rep<F>& M) {
  const auto pres = E.minimal_presentation(M);
  const std::size_t n = E.algebra().n_vertices();
  const auto m1 = pres.P1.multiplicities(n), m0 = pres.P0.multiplicities(n);
  GVector g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = static_cast<std::int64_t>(m1[i]) - static_cast<std::int64_t>(m0[i]);
  return g;
}

template <class F>
GVector g_vector_via_simples(const Engine<F>& E, const Rep<F>& M) {
  const std::size_t n = E.algebra().n_vertices();
  GVector g(n);
  for (Vertex i = 0; i < n; ++i) {
    const Rep<F> S = simple_module(E.algebra(), i);
    g[i] = -static_cast<std::int64_t>(E.hom(M, S)) + static_cast<std::int64_t>(E.ext(M, S, 1));
  }
  return g;
}

template <class F>
std::size_t e_invariant(const Engine<F>& E, const Rep<F>& M, const Rep<F>& N) {
  return E.hom(N, tau(E, M));
}

template <class F>
std::int64_t e_invariant_expansion(const Engine<F>& E, const Rep<F>& M, const Rep<F>& N) {
  const GVector g = g_vector(E, M);
  auto v = static_cast<std::int64_t>(E.hom(M, N));
  for (std::size_t i = 0; i < g.size(); ++i) v += g[i] * static_cast<std::int64_t>(N.dims[i]);
  return v;
}

template <class F>
bool is_brick(const Engine<F>& E, const Rep<F>& M) {
  return E.hom(M, M) == 1;
}

template <class F>
bool is_rigid(const Engine<F>& E, const Rep<F>& M) {
  return E.ext(M, M, 1) == 0;
}

template <class F>
bool is_tau_rigid(const Engine<F>& E, const Rep<F>& M) {
  return e_invariant(E, M, M) == 0;
}

#define MODVAR_INSTANTIATE_AR(F)                                                                   \
  template NakayamaImage<F> nakayama_image<F>(const Engine<F>&, const Presentation<F>&);           \
  template Rep<F> tau<F>(const Engine<F>&, const Rep<F>&);                                         \
  template GVector g_vector<F>(const Engine<F>&, const Rep<F>&);                                   \
  template GVector g_vector_via_simples<F>(const Engine<F>&, const Rep<F>&);                       \
  template std::size_t e_invariant<F>(const Engine<F>&, const Rep<F>&, const Rep<F>&);             \
  template std::int64_t e_invariant_expansion<F>(const Engine<F>&, const Rep<F>&, const Rep<F>&);  \
  template bool is_brick<F>(const Engine<F>&, const Rep<F>&);                                      \
  template bool is_rigid<F>(const Engine<F>&, const Rep<F>&);                                      \
  template bool is_tau_rigid<F>(const Engine<F>&, const Rep<F>&);
MODVAR_FOR_EACH_FIELD(MODVAR_INSTANTIATE_AR)

}  // namespace modvar
