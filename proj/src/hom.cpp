#include "modvar/hom.hpp"

#include "modvar/exactla/kernels.hpp"
#include "modvar/instantiate.hpp"

namespace modvar {

namespace {

template <class F>
std::vector<std::size_t> unknown_offsets(const Rep<F>& M, const Rep<F>& N) {
  std::vector<std::size_t> off(M.dims.size() + 1, 0);
  for (std::size_t v = 0; v < M.dims.size(); ++v) off[v + 1] = off[v] + N.dims[v] * M.dims[v];
  return off;
}

// Rows: for each arrow a: s -> t and each (p, q) in N_t × M_s, the entry
// (f_t M(a) - N(a) f_s)[p, q]. Unknown f_v[r, c] sits at off[v] + r·M_v + c.
template <class F>
Matrix<F> intertwiner_system(const Quiver& q, const Rep<F>& M, const Rep<F>& N,
                             const std::vector<std::size_t>& off) {
  const F& f = M.field;
  std::size_t n_eq = 0;
  for (const auto& a : q.arrows()) n_eq += N.dims[a.tgt] * M.dims[a.src];
  Matrix<F> sys(f, n_eq, off.back());
  std::size_t row = 0;
  for (ArrowId ai = 0; ai < q.n_arrows(); ++ai) {
    const auto& a = q.arrow(ai);
    const Matrix<F>& Ma = M.mats[ai];
    const Matrix<F>& Na = N.mats[ai];
    const std::size_t s = a.src, t = a.tgt;
    for (std::size_t p = 0; p < N.dims[t]; ++p)
      for (std::size_t c = 0; c < M.dims[s]; ++c, ++row) {
        // Σ_k f_t[p,k] M(a)[k,c]
        for (std::size_t k = 0; k < M.dims[t]; ++k) {
          auto& e = sys(row, off[t] + p * M.dims[t] + k);
          e = f.add(e, Ma(k, c));
        }
        // - Σ_k N(a)[p,k] f_s[k,c]
        for (std::size_t k = 0; k < N.dims[s]; ++k) {
          auto& e = sys(row, off[s] + k * M.dims[s] + c);
          e = f.sub(e, Na(p, k));
        }
      }
  }
  return sys;
}

}  // namespace

template <class F>
HomSpace<F> hom_basis(const Quiver& q, const Rep<F>& M, const Rep<F>& N) {
  const auto off = unknown_offsets(M, N);
  HomSpace<F> H{M.dims, N.dims, {}};
  if (off.back() == 0) return H;
  const Matrix<F> K = kernel_basis(intertwiner_system(q, M, N, off));
  for (std::size_t k = 0; k < K.cols(); ++k) {
    Morphism<F> g;
    for (std::size_t v = 0; v < M.dims.size(); ++v) {
      Matrix<F> b(M.field, N.dims[v], M.dims[v]);
      for (std::size_t r = 0; r < N.dims[v]; ++r)
        for (std::size_t c = 0; c < M.dims[v]; ++c) b(r, c) = K(off[v] + r * M.dims[v] + c, k);
      g.blocks.push_back(std::move(b));
    }
    H.basis.push_back(std::move(g));
  }
  return H;
}

template <class F>
std::size_t hom_dim(const Quiver& q, const Rep<F>& M, const Rep<F>& N) {
  const auto off = unknown_offsets(M, N);
  if (off.back() == 0) return 0;
  return off.back() - rank(intertwiner_system(q, M, N, off));
}

template <class F>
bool is_homomorphism(const Quiver& q, const Rep<F>& M, const Rep<F>& N, const Morphism<F>& f) {
  for (ArrowId a = 0; a < q.n_arrows(); ++a) {
    const auto& arr = q.arrow(a);
    if (!(f.blocks[arr.tgt] * M.mats[a] == N.mats[a] * f.blocks[arr.src])) return false;
  }
  return true;
}

#define MODVAR_INSTANTIATE_HOM(F)                                                         \
  template HomSpace<F> hom_basis<F>(const Quiver&, const Rep<F>&, const Rep<F>&);         \
  template std::size_t hom_dim<F>(const Quiver&, const Rep<F>&, const Rep<F>&);           \
  template bool is_homomorphism<F>(const Quiver&, const Rep<F>&, const Rep<F>&, const Morphism<F>&);
MODVAR_FOR_EACH_FIELD(MODVAR_INSTANTIATE_HOM)

}  // namespace modvar
