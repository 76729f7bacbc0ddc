#include "modvar/rep.hpp"

#include "modvar/errors.hpp"
#include "modvar/exactla/kernels.hpp"
#include "modvar/hom.hpp"
#include "modvar/instantiate.hpp"

namespace modvar {

std::string RelationReport::describe() const {
  if (ok) return "relations hold";
  std::string s;
  if (!failing_relations.empty()) {
    s = "relations violated:";
    for (auto r : failing_relations) s += " #" + std::to_string(r);
  }
  if (!truncation_ok) {
    if (!s.empty()) s += "; ";
    s += "paths of length L act nonzero";
  }
  return s;
}

std::string to_string(IsoVerdict v) {
  switch (v) {
    case IsoVerdict::Iso: return "iso";
    case IsoVerdict::NotIso: return "not_iso";
    case IsoVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

template <class F>
void check_shapes(const Quiver& q, const Rep<F>& M) {
  if (M.dims.size() != q.n_vertices())
    throw InputError("dimension vector has " + std::to_string(M.dims.size()) + " entries, quiver has " +
                     std::to_string(q.n_vertices()) + " vertices");
  if (M.mats.size() != q.n_arrows()) throw InputError("module does not give one matrix per arrow");
  for (ArrowId a = 0; a < q.n_arrows(); ++a) {
    const auto& arr = q.arrow(a);
    if (M.mats[a].rows() != M.dims[arr.tgt] || M.mats[a].cols() != M.dims[arr.src])
      throw InputError("matrix for arrow '" + arr.name + "' has shape " + M.mats[a].shape() + ", expected " +
                       std::to_string(M.dims[arr.tgt]) + "x" + std::to_string(M.dims[arr.src]));
  }
}

template <class F>
RelationReport check_relations(const FDAlgebra<F>& A, const Rep<F>& M) {
  const Quiver& q = A.quiver();
  check_shapes(q, M);
  const F& f = M.field;
  RelationReport rep;
  const auto& rels = A.spec().relations;
  for (std::size_t r = 0; r < rels.size(); ++r) {
    const auto& rel = rels[r];
    Matrix<F> acc(f, M.dims[rel.front().path.tgt], M.dims[rel.front().path.src]);
    for (const auto& term : rel) acc += path_action(M, term.path).scaled(f.from_int(term.coeff));
    if (!acc.is_zero()) rep.failing_relations.push_back(r);
  }
  if (q.has_oriented_cycle()) {
    // Images of J^k·M per vertex, as column spans.
    std::vector<Matrix<F>> span;
    for (Vertex v = 0; v < q.n_vertices(); ++v) span.push_back(Matrix<F>::identity(f, M.dims[v]));
    for (std::size_t k = 0; k < A.spec().trunc; ++k) {
      std::vector<Matrix<F>> next;
      for (Vertex v = 0; v < q.n_vertices(); ++v) next.emplace_back(f, M.dims[v], 0);
      for (ArrowId a = 0; a < q.n_arrows(); ++a) {
        const auto& arr = q.arrow(a);
        next[arr.tgt] = hstack(next[arr.tgt], M.mats[a] * span[arr.src]);
      }
      for (auto& m : next) m = column_space_basis(m);
      span = std::move(next);
    }
    for (const auto& m : span)
      if (m.cols() != 0) rep.truncation_ok = false;
  }
  rep.ok = rep.failing_relations.empty() && rep.truncation_ok;
  return rep;
}

template <class F>
Rep<F> direct_sum(const Rep<F>& M, const Rep<F>& N) {
  if (M.dims.size() != N.dims.size() || M.mats.size() != N.mats.size())
    throw InputError("direct sum of modules over different quivers");
  Rep<F> S;
  S.field = M.field;
  for (std::size_t v = 0; v < M.dims.size(); ++v) S.dims.push_back(M.dims[v] + N.dims[v]);
  for (std::size_t a = 0; a < M.mats.size(); ++a) {
    Matrix<F> m(M.field, M.mats[a].rows() + N.mats[a].rows(), M.mats[a].cols() + N.mats[a].cols());
    m.set_block(0, 0, M.mats[a]);
    m.set_block(M.mats[a].rows(), M.mats[a].cols(), N.mats[a]);
    S.mats.push_back(std::move(m));
  }
  return S;
}

template <class F>
Rep<F> conjugate(const Quiver& q, const GroupElement<F>& g, const Rep<F>& M) {
  check_shapes(q, M);
  if (g.blocks.size() != M.dims.size()) throw InputError("group element has the wrong number of blocks");
  std::vector<Matrix<F>> inv;
  for (std::size_t v = 0; v < M.dims.size(); ++v) {
    if (g.blocks[v].rows() != M.dims[v] || g.blocks[v].cols() != M.dims[v])
      throw InputError("group element block " + std::to_string(v) + " has the wrong size");
    auto i = inverse(g.blocks[v]);
    if (!i) throw InputError("group element block " + std::to_string(v) + " is singular");
    inv.push_back(std::move(*i));
  }
  Rep<F> out = M;
  for (ArrowId a = 0; a < q.n_arrows(); ++a) {
    const auto& arr = q.arrow(a);
    out.mats[a] = inv[arr.tgt] * M.mats[a] * g.blocks[arr.src];
  }
  return out;
}

template <class F>
GroupElement<F> random_group_element(const F& field, const std::vector<std::size_t>& dims, Rng& rng) {
  GroupElement<F> g;
  for (auto d : dims) {
    for (;;) {
      Matrix<F> m(field, d, d);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) m(r, c) = field.uniform(rng);
      if (rank(m) == d) {
        g.blocks.push_back(std::move(m));
        break;
      }
    }
  }
  return g;
}

template <class F>
Rep<F> random_rep(const FDAlgebra<F>& A, const std::vector<std::size_t>& dims, Rng& rng) {
  const Quiver& q = A.quiver();
  if (!A.spec().relations.empty() || q.has_oriented_cycle())
    throw InputError(
        "uniform sampling of mod(A,d) needs a path algebra of an acyclic quiver; "
        "use a module family or brute-force enumeration for algebras with relations");
  if (dims.size() != q.n_vertices()) throw InputError("dimension vector length does not match the quiver");
  Rep<F> M = Rep<F>::zero(q, A.field(), dims);
  for (auto& m : M.mats)
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = A.field().uniform(rng);
  return M;
}

template <class F>
IsoVerdict iso_test(const FDAlgebra<F>& A, const Rep<F>& M, const Rep<F>& N, std::size_t trials, Rng& rng) {
  const Quiver& q = A.quiver();
  if (M.dims != N.dims) return IsoVerdict::NotIso;
  if (M.total_dim() == 0) return IsoVerdict::Iso;
  const HomSpace<F> H = hom_basis(q, M, N);
  if (H.dim() == 0) return IsoVerdict::NotIso;
  if (hom_dim(q, M, M) != H.dim()) return IsoVerdict::NotIso;
  const F& f = M.field;
  for (std::size_t t = 0; t < trials; ++t) {
    bool invertible = true;
    for (std::size_t v = 0; v < M.dims.size() && invertible; ++v) {
      Matrix<F> block(f, N.dims[v], M.dims[v]);
      for (const auto& b : H.basis) block += b.blocks[v].scaled(f.uniform(rng));
      invertible = rank(block) == M.dims[v];
    }
    if (invertible) return IsoVerdict::Iso;
  }
  return IsoVerdict::Inconclusive;
}

#define MODVAR_INSTANTIATE_REP(F)                                                                       \
  template void check_shapes<F>(const Quiver&, const Rep<F>&);                                          \
  template RelationReport check_relations<F>(const FDAlgebra<F>&, const Rep<F>&);                       \
  template Rep<F> direct_sum<F>(const Rep<F>&, const Rep<F>&);                                          \
  template Rep<F> conjugate<F>(const Quiver&, const GroupElement<F>&, const Rep<F>&);                                  \
  template GroupElement<F> random_group_element<F>(const F&, const std::vector<std::size_t>&, Rng&);     \
  template Rep<F> random_rep<F>(const FDAlgebra<F>&, const std::vector<std::size_t>&, Rng&);            \
  template IsoVerdict iso_test<F>(const FDAlgebra<F>&, const Rep<F>&, const Rep<F>&, std::size_t, Rng&);
MODVAR_FOR_EACH_FIELD(MODVAR_INSTANTIATE_REP)

}  // namespace modvar
