#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "modvar/algebra.hpp"
#include "modvar/hom.hpp"
#include "modvar/module.hpp"

namespace modvar {

inline constexpr std::uint64_t kDefaultCellLimit = 20000000;

/// ⊕_s P(generators[s]). The basis at vertex w concatenates, in summand
/// order, the basis paths generators[s] -> w of the algebra.
template <class F>
struct ProjectiveSum {
  std::vector<Vertex> generators;
  Rep<F> module;

  std::vector<std::size_t> multiplicities(std::size_t n_vertices) const;
  /// Offset of summand s inside the vertex-w space.
  std::size_t summand_offset(const FDAlgebra<F>& A, std::size_t s, Vertex w) const;
};

template <class F>
ProjectiveSum<F> projective_sum(const FDAlgebra<F>& A, std::vector<Vertex> generators);

/// One stage j of a minimal projective resolution: P_j ->> Ω^j, with Ω^j
/// embedded in P_{j-1} for j >= 1.
template <class F>
struct ResolutionStage {
  ProjectiveSum<F> projective;  // P_j
  Rep<F> syzygy;                // Ω^j (Ω^0 = M)
  Morphism<F> cover;            // P_j -> Ω^j, surjective
  Morphism<F> inclusion;        // Ω^j -> P_{j-1}; empty blocks for j = 0
  Morphism<F> differential;     // p_j: P_j -> P_{j-1} for j >= 1; p_0 = cover
};

template <class F>
struct Resolution {
  std::vector<ResolutionStage<F>> stages;

  std::size_t length() const { return stages.empty() ? 0 : stages.size() - 1; }
};

template <class F>
struct Presentation {
  ProjectiveSum<F> P1;
  ProjectiveSum<F> P0;
  Morphism<F> p1;  // P1 -> P0
  Morphism<F> p0;  // P0 -> M
};

struct EngineConfig {
  std::uint64_t cell_limit = kDefaultCellLimit;
};

/// Homological computations over one algebra. Minimal resolutions are cached
/// per module and extended lazily; the cache is safe for concurrent queries.
template <class F>
class Engine {
 public:
  using value_type = typename F::value_type;

  explicit Engine(const FDAlgebra<F>& A, EngineConfig cfg = {}) : A_(A), cfg_(cfg) {}
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  const FDAlgebra<F>& algebra() const { return A_; }
  const EngineConfig& config() const { return cfg_; }

  std::size_t hom(const Rep<F>& M, const Rep<F>& N) const;
  HomSpace<F> hom_basis(const Rep<F>& M, const Rep<F>& N) const;

  std::vector<std::size_t> top_multiplicities(const Rep<F>& M) const;
  /// Projective cover P ->> M built from a basis of a complement of rad M.
  std::pair<ProjectiveSum<F>, Morphism<F>> projective_cover(const Rep<F>& M) const;
  Presentation<F> minimal_presentation(const Rep<F>& M) const;

  /// Stages 0..len of the cached minimal resolution (computed on demand).
  Resolution<F> resolution(const Rep<F>& M, std::size_t len) const;
  Rep<F> syzygy(const Rep<F>& M, std::size_t j) const;
  /// [P_j : P(i)] for all i.
  std::vector<std::size_t> proj_mult(const Rep<F>& M, std::size_t j) const;

  /// Hom(p_j, N): Hom(P_{j-1}, N) -> Hom(P_j, N) in the coordinates
  /// Hom(P, N) ≅ ⊕_s N_{generator s}. Requires j >= 1.
  Matrix<F> pullback(const Resolution<F>& R, std::size_t j, const Rep<F>& N) const;

  /// Resolution route.
  std::size_t ext(const Rep<F>& M, const Rep<F>& N, std::size_t i) const;
  /// η_t = Σ_{i<=t} (−1)^i ext^i via the resolution route.
  std::int64_t euler(const Rep<F>& M, const Rep<F>& N, std::size_t t) const;
  std::size_t hom_omega(const Rep<F>& M, const Rep<F>& N, std::size_t j) const;
  /// Σ_i (−1)^{j−1} η_{j−1}(M, S(i))·dim N_i for j >= 1, 0 for j = 0.
  std::int64_t p_term(const Rep<F>& M, const Rep<F>& N, std::size_t j) const;

  /// Throws CheckFailure naming the first stage that is not exact or not minimal.
  void verify_resolution(const Rep<F>& M, std::size_t len) const;

  nlohmann::json resolution_json(const Rep<F>& M, std::size_t len) const;

  std::size_t cache_size() const;

 private:
  struct Entry {
    std::mutex mu;
    Resolution<F> res;
  };

  std::shared_ptr<Entry> entry_for(const Rep<F>& M) const;
  void extend(Resolution<F>& R) const;
  ResolutionStage<F> first_stage(const Rep<F>& M) const;

  const FDAlgebra<F>& A_;
  EngineConfig cfg_;
  mutable std::shared_mutex cache_mu_;
  mutable std::map<std::string, std::shared_ptr<Entry>> cache_;
};

/// Ker(f) for a module map f: S -> T, as a representation on the kernel
/// bases; `inclusion` receives the basis matrices (columns in S_w).
template <class F>
Rep<F> kernel_submodule(const Quiver& q, const Rep<F>& S, const Morphism<F>& f,
                        std::vector<Matrix<F>>* inclusion = nullptr);

/// Canonical byte string of a module (dims and entries), the resolution cache key.
template <class F>
std::string module_key(const Rep<F>& M);

template <class F>
nlohmann::json matrix_json(const Matrix<F>& m);

}  // namespace modvar
