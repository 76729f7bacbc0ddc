#include "modvar/homology.hpp"

#include <sstream>
#include <type_traits>

#include "modvar/errors.hpp"
#include "modvar/exactla/kernels.hpp"
#include "modvar/instantiate.hpp"

namespace modvar {

template <class F>
std::vector<std::size_t> ProjectiveSum<F>::multiplicities(std::size_t n_vertices) const {
  std::vector<std::size_t> m(n_vertices, 0);
  for (auto v : generators) ++m[v];
  return m;
}

template <class F>
std::size_t ProjectiveSum<F>::summand_offset(const FDAlgebra<F>& A, std::size_t s, Vertex w) const {
  std::size_t off = 0;
  for (std::size_t k = 0; k < s; ++k) off += A.paths_between(generators[k], w).size();
  return off;
}

template <class F>
ProjectiveSum<F> projective_sum(const FDAlgebra<F>& A, std::vector<Vertex> generators) {
  const Quiver& q = A.quiver();
  const std::size_t n = q.n_vertices();
  ProjectiveSum<F> P;
  P.generators = std::move(generators);
  std::vector<std::size_t> dims(n, 0);
  for (auto v : P.generators)
    for (Vertex w = 0; w < n; ++w) dims[w] += A.paths_between(v, w).size();
  P.module = Rep<F>::zero(q, A.field(), dims);
  for (ArrowId a = 0; a < q.n_arrows(); ++a) {
    const Vertex s = q.arrow(a).src, t = q.arrow(a).tgt;
    std::size_t os = 0, ot = 0;
    for (auto v : P.generators) {
      const auto& src_list = A.paths_between(v, s);
      const auto& tgt_list = A.paths_between(v, t);
      for (std::size_t k = 0; k < src_list.size(); ++k)
        for (const auto& [b, c] : A.left_arrow(a, src_list[k])) {
          std::size_t local = 0;
          while (tgt_list[local] != b) ++local;
          P.module.mats[a](ot + local, os + k) = c;
        }
      os += src_list.size();
      ot += tgt_list.size();
    }
  }
  return P;
}

template <class F>
std::string module_key(const Rep<F>& M) {
  std::ostringstream os;
  os << M.field.name() << '|';
  for (auto d : M.dims) os << d << ',';
  for (const auto& m : M.mats) {
    os << '|';
    for (const auto& x : m.data()) os << M.field.to_string(x) << ',';
  }
  return os.str();
}

template <class F>
nlohmann::json matrix_json(const Matrix<F>& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if constexpr (std::is_same_v<F, PrimeField>)
        row.push_back(m(r, c));
      else
        row.push_back(m.field().to_string(m(r, c)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class F>
std::size_t Engine<F>::hom(const Rep<F>& M, const Rep<F>& N) const {
  return hom_dim(A_.quiver(), M, N);
}

template <class F>
HomSpace<F> Engine<F>::hom_basis(const Rep<F>& M, const Rep<F>& N) const {
  return modvar::hom_basis(A_.quiver(), M, N);
}

namespace {

// Column span of the arrow images landing at v.
template <class F>
Matrix<F> radical_at(const Quiver& q, const Rep<F>& M, Vertex v) {
  Matrix<F> rad(M.field, M.dims[v], 0);
  for (ArrowId a = 0; a < q.n_arrows(); ++a)
    if (q.arrow(a).tgt == v) rad = hstack(rad, M.mats[a]);
  return rad;
}

}  // namespace

template <class F>
std::vector<std::size_t> Engine<F>::top_multiplicities(const Rep<F>& M) const {
  const Quiver& q = A_.quiver();
  std::vector<std::size_t> top(q.n_vertices());
  for (Vertex v = 0; v < q.n_vertices(); ++v) top[v] = M.dims[v] - rank(radical_at(q, M, v));
  return top;
}

template <class F>
std::pair<ProjectiveSum<F>, Morphism<F>> Engine<F>::projective_cover(const Rep<F>& M) const {
  const Quiver& q = A_.quiver();
  const F& f = M.field;
  const std::size_t n = q.n_vertices();
  std::vector<Vertex> gens;
  std::vector<std::size_t> gen_coord;  // unit vector index inside M_{gens[s]}
  for (Vertex v = 0; v < n; ++v) {
    Matrix<F> R = column_space_basis(radical_at(q, M, v));
    auto e = rref(hstack(R, Matrix<F>::identity(f, M.dims[v])));
    for (auto pc : e.pivot_cols)
      if (pc >= R.cols()) {
        gens.push_back(v);
        gen_coord.push_back(pc - R.cols());
      }
  }
  ProjectiveSum<F> P = projective_sum(A_, gens);
  std::vector<std::optional<Matrix<F>>> action(A_.dim());
  Morphism<F> pi = Morphism<F>::zero(f, P.module.dims, M.dims);
  for (Vertex w = 0; w < n; ++w) {
    std::size_t col = 0;
    for (std::size_t s = 0; s < gens.size(); ++s)
      for (auto u : A_.paths_between(gens[s], w)) {
        if (!action[u]) action[u] = path_action(M, A_.basis_path(u));
        for (std::size_t r = 0; r < M.dims[w]; ++r) pi.blocks[w](r, col) = (*action[u])(r, gen_coord[s]);
        ++col;
      }
  }
  return {std::move(P), std::move(pi)};
}

template <class F>
ResolutionStage<F> Engine<F>::first_stage(const Rep<F>& M) const {
  auto [P, pi] = projective_cover(M);
  ResolutionStage<F> st;
  st.projective = std::move(P);
  st.syzygy = M;
  st.cover = pi;
  st.differential = std::move(pi);
  return st;
}

template <class F>
Rep<F> kernel_submodule(const Quiver& q, const Rep<F>& S, const Morphism<F>& f, std::vector<Matrix<F>>* inclusion) {
  const std::size_t n = q.n_vertices();
  std::vector<Matrix<F>> K(n);
  std::vector<std::size_t> dims(n);
  for (Vertex w = 0; w < n; ++w) {
    K[w] = kernel_basis(f.blocks[w]);
    dims[w] = K[w].cols();
  }
  Rep<F> ker = Rep<F>::zero(q, S.field, dims);
  for (ArrowId a = 0; a < q.n_arrows(); ++a) {
    const Vertex s = q.arrow(a).src, t = q.arrow(a).tgt;
    auto x = solve_many(K[t], S.mats[a] * K[s]);
    if (!x) throw CheckFailure("kernel of a module map is not a submodule");
    ker.mats[a] = std::move(*x);
  }
  if (inclusion) *inclusion = std::move(K);
  return ker;
}

template <class F>
void Engine<F>::extend(Resolution<F>& R) const {
  const auto& prev = R.stages.back();
  std::vector<Matrix<F>> K;
  Rep<F> omega = kernel_submodule(A_.quiver(), prev.projective.module, prev.cover, &K);
  auto [Pn, pi] = projective_cover(omega);
  ResolutionStage<F> st;
  st.projective = std::move(Pn);
  st.syzygy = std::move(omega);
  st.inclusion.blocks = K;
  st.differential = Morphism<F>{K}.after(pi);
  st.cover = std::move(pi);
  R.stages.push_back(std::move(st));
}

template <class F>
std::shared_ptr<typename Engine<F>::Entry> Engine<F>::entry_for(const Rep<F>& M) const {
  const std::string key = module_key(M);
  {
    std::shared_lock lock(cache_mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  std::unique_lock lock(cache_mu_);
  auto [it, inserted] = cache_.try_emplace(key, nullptr);
  if (inserted) it->second = std::make_shared<Entry>();
  return it->second;
}

template <class F>
std::size_t Engine<F>::cache_size() const {
  std::shared_lock lock(cache_mu_);
  return cache_.size();
}

template <class F>
Resolution<F> Engine<F>::resolution(const Rep<F>& M, std::size_t len) const {
  auto e = entry_for(M);
  std::lock_guard lock(e->mu);
  if (e->res.stages.empty()) e->res.stages.push_back(first_stage(M));
  while (e->res.length() < len) extend(e->res);
  Resolution<F> out;
  out.stages.assign(e->res.stages.begin(), e->res.stages.begin() + static_cast<std::ptrdiff_t>(len + 1));
  return out;
}

template <class F>
Presentation<F> Engine<F>::minimal_presentation(const Rep<F>& M) const {
  auto R = resolution(M, 1);
  return {R.stages[1].projective, R.stages[0].projective, R.stages[1].differential, R.stages[0].cover};
}

template <class F>
Rep<F> Engine<F>::syzygy(const Rep<F>& M, std::size_t j) const {
  if (j == 0) return M;
  // Ω^j is stage j's syzygy; stage j exists once the resolution has length j.
  return resolution(M, j).stages[j].syzygy;
}

template <class F>
std::vector<std::size_t> Engine<F>::proj_mult(const Rep<F>& M, std::size_t j) const {
  return resolution(M, j).stages[j].projective.multiplicities(A_.n_vertices());
}

template <class F>
Matrix<F> Engine<F>::pullback(const Resolution<F>& R, std::size_t j, const Rep<F>& N) const {
  if (j == 0 || j > R.length()) throw std::out_of_range("pullback index outside the computed resolution");
  const F& f = N.field;
  const auto& cur = R.stages[j];
  const auto& prev = R.stages[j - 1];
  const auto& tg = cur.projective.generators;
  const auto& sg = prev.projective.generators;
  std::vector<std::size_t> row_off(tg.size() + 1, 0), col_off(sg.size() + 1, 0);
  for (std::size_t t = 0; t < tg.size(); ++t) row_off[t + 1] = row_off[t] + N.dims[tg[t]];
  for (std::size_t s = 0; s < sg.size(); ++s) col_off[s + 1] = col_off[s] + N.dims[sg[s]];
  Matrix<F> H(f, row_off.back(), col_off.back());
  std::vector<std::optional<Matrix<F>>> action(A_.dim());
  for (std::size_t t = 0; t < tg.size(); ++t) {
    const Vertex w = tg[t];
    const auto& own = A_.paths_between(w, w);
    std::size_t triv = 0;
    while (own[triv] != A_.idempotent(w)) ++triv;
    const auto image = cur.differential.blocks[w].column(cur.projective.summand_offset(A_, t, w) + triv);
    std::size_t pos = 0;
    for (std::size_t s = 0; s < sg.size(); ++s)
      for (auto u : A_.paths_between(sg[s], w)) {
        const auto& c = image[pos++];
        if (f.is_zero(c)) continue;
        if (!action[u]) action[u] = path_action(N, A_.basis_path(u));
        const Matrix<F>& Nu = *action[u];
        for (std::size_t r = 0; r < Nu.rows(); ++r)
          for (std::size_t k = 0; k < Nu.cols(); ++k) {
            auto& e = H(row_off[t] + r, col_off[s] + k);
            e = f.add(e, f.mul(c, Nu(r, k)));
          }
      }
  }
  return H;
}

template <class F>
std::size_t Engine<F>::ext(const Rep<F>& M, const Rep<F>& N, std::size_t i) const {
  if (i == 0) return hom(M, N);
  auto R = resolution(M, i + 1);
  std::size_t hom_Pi = 0;
  for (auto v : R.stages[i].projective.generators) hom_Pi += N.dims[v];
  return hom_Pi - rank(pullback(R, i + 1, N)) - rank(pullback(R, i, N));
}

template <class F>
std::int64_t Engine<F>::euler(const Rep<F>& M, const Rep<F>& N, std::size_t t) const {
  std::int64_t acc = 0;
  for (std::size_t i = 0; i <= t; ++i) {
    const auto e = static_cast<std::int64_t>(ext(M, N, i));
    acc += (i % 2 == 0) ? e : -e;
  }
  return acc;
}

template <class F>
std::size_t Engine<F>::hom_omega(const Rep<F>& M, const Rep<F>& N, std::size_t j) const {
  return hom(syzygy(M, j), N);
}

template <class F>
std::int64_t Engine<F>::p_term(const Rep<F>& M, const Rep<F>& N, std::size_t j) const {
  if (j == 0) return 0;
  const std::int64_t sign = (j - 1) % 2 == 0 ? 1 : -1;
  std::int64_t acc = 0;
  for (Vertex i = 0; i < A_.n_vertices(); ++i) {
    if (N.dims[i] == 0) continue;
    acc += sign * euler(M, simple_module(A_, i), j - 1) * static_cast<std::int64_t>(N.dims[i]);
  }
  return acc;
}

template <class F>
void Engine<F>::verify_resolution(const Rep<F>& M, std::size_t len) const {
  const Quiver& q = A_.quiver();
  auto R = resolution(M, len);
  auto fail = [](std::size_t j, const std::string& what) {
    throw CheckFailure("resolution stage " + std::to_string(j) + ": " + what);
  };
  for (std::size_t j = 0; j <= len; ++j) {
    const auto& st = R.stages[j];
    const Rep<F>& P = st.projective.module;
    if (!is_homomorphism(q, P, st.syzygy, st.cover)) fail(j, "cover is not a module map");
    for (Vertex w = 0; w < q.n_vertices(); ++w)
      if (rank(st.cover.blocks[w]) != st.syzygy.dims[w]) fail(j, "cover is not surjective");
    if (j == 0) continue;
    const auto& prev = R.stages[j - 1];
    const Rep<F>& target = prev.projective.module;
    if (!is_homomorphism(q, P, target, st.differential)) fail(j, "differential is not a module map");
    for (Vertex w = 0; w < q.n_vertices(); ++w) {
      // exactness at P_{j-1}
      if (!(prev.cover.blocks[w] * st.differential.blocks[w]).is_zero()) fail(j, "composite is nonzero");
      if (rank(st.differential.blocks[w]) + rank(prev.cover.blocks[w]) != target.dims[w])
        fail(j, "image differs from the kernel");
      // minimality: the image avoids the top of P_{j-1}
      std::size_t off = 0;
      for (auto v : prev.projective.generators) {
        const auto& list = A_.paths_between(v, w);
        for (std::size_t l = 0; l < list.size(); ++l)
          if (list[l] == A_.idempotent(w))
            for (std::size_t c = 0; c < st.differential.blocks[w].cols(); ++c)
              if (!M.field.is_zero(st.differential.blocks[w](off + l, c))) fail(j, "image meets the top");
        off += list.size();
      }
    }
  }
}

template <class F>
nlohmann::json Engine<F>::resolution_json(const Rep<F>& M, std::size_t len) const {
  auto R = resolution(M, len);
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t j = 0; j <= len; ++j) {
    const auto& st = R.stages[j];
    nlohmann::json s;
    s["j"] = j;
    s["generators"] = st.projective.generators;
    s["multiplicities"] = st.projective.multiplicities(A_.n_vertices());
    s["projective_dims"] = st.projective.module.dims;
    s["syzygy_dims"] = st.syzygy.dims;
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& b : st.differential.blocks) blocks.push_back(matrix_json(b));
    s["differential"] = std::move(blocks);
    out.push_back(std::move(s));
  }
  return out;
}

#define MODVAR_INSTANTIATE_HOMOLOGY(F)                                                    \
  template struct ProjectiveSum<F>;                                                       \
  template ProjectiveSum<F> projective_sum<F>(const FDAlgebra<F>&, std::vector<Vertex>);  \
  template std::string module_key<F>(const Rep<F>&);                                      \
  template nlohmann::json matrix_json<F>(const Matrix<F>&);                               \
  template Rep<F> kernel_submodule<F>(const Quiver&, const Rep<F>&, const Morphism<F>&,            \
                                      std::vector<Matrix<F>>*);                                      \
  template class Engine<F>;
MODVAR_FOR_EACH_FIELD(MODVAR_INSTANTIATE_HOMOLOGY)

}  // namespace modvar
