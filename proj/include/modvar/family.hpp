#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "modvar/algebra.hpp"
#include "modvar/module.hpp"
#include "modvar/rng.hpp"

namespace modvar {

/// Grammar version of family entry expressions:
///   expr  := term (('+'|'-') term)*
///   term  := unary (('*'|'/') unary)*
///   unary := '-' unary | primary
///   primary := INT | 'L' | '(' expr ')'
/// 'L' is the family parameter (λ).
inline constexpr int kExprGrammarVersion = 1;

/// A univariate rational expression in the parameter, stored as a small AST.
template <class F>
class Expr {
 public:
  using value_type = typename F::value_type;

  Expr() : nodes_{Node{Kind::Const, F{}.zero(), -1, -1}}, root_(0), text_("0") {}

  /// Throws InputError with the offending column on malformed input.
  static Expr parse(std::string_view text, const F& field);
  static Expr constant(const value_type& v, const F& field = F{});
  static Expr parameter();

  /// Throws SpecializationError when a denominator vanishes.
  value_type eval(const F& field, const value_type& lambda) const;
  bool depends_on_parameter() const;
  const std::string& text() const { return text_; }

 private:
  enum class Kind { Const, Param, Neg, Add, Sub, Mul, Div };
  struct Node {
    Kind kind = Kind::Const;
    value_type value{};
    int lhs = -1;
    int rhs = -1;
  };
  class Parser;

  value_type eval_node(const F& field, int n, const value_type& lambda) const;

  std::vector<Node> nodes_;
  int root_ = -1;
  std::string text_;
};

/// A representation whose entries are rational functions of one parameter.
template <class F>
struct ModuleFamily {
  using value_type = typename F::value_type;

  F field{};
  std::vector<std::size_t> dims;
  /// Per arrow, row-major entries of a dims[tgt] × dims[src] matrix.
  std::vector<std::vector<Expr<F>>> entries;
  /// Declared degenerate parameter values (in addition to poles).
  std::vector<value_type> excluded;

  static ModuleFamily constant(const Quiver& q, const Rep<F>& M);

  bool is_excluded(const value_type& lambda) const;
  bool depends_on_parameter() const;
  /// Throws SpecializationError at an excluded point or a pole, InputError on
  /// shape mismatch.
  Rep<F> specialize(const Quiver& q, const value_type& lambda) const;
};

template <class F>
struct Sample {
  Rep<F> module;
  std::optional<typename F::value_type> lambda;
};

/// Source of random points of one irreducible family.
template <class F>
class Sampler {
 public:
  using value_type = typename F::value_type;
  virtual ~Sampler() = default;

  virtual std::string describe() const = 0;
  virtual Sample<F> draw(Rng& rng) const = 0;
  virtual bool parametrized() const { return false; }
  /// Specialization at a chosen parameter. Unparametrized samplers throw InputError.
  virtual Rep<F> at(const value_type& lambda) const;
};

/// Draws λ uniformly, skipping excluded points and poles.
template <class F>
class FamilySampler final : public Sampler<F> {
 public:
  using value_type = typename F::value_type;
  static constexpr int kMaxAttempts = 64;

  FamilySampler(Quiver q, ModuleFamily<F> family);

  std::string describe() const override { return "family"; }
  /// Throws InputError when kMaxAttempts consecutive draws are all excluded.
  Sample<F> draw(Rng& rng) const override;
  bool parametrized() const override { return true; }
  Rep<F> at(const value_type& lambda) const override;
  const ModuleFamily<F>& family() const { return family_; }

 private:
  Quiver quiver_;
  ModuleFamily<F> family_;
};

/// Uniform points of mod(A, d) for a path algebra of an acyclic quiver.
template <class F>
class HereditarySampler final : public Sampler<F> {
 public:
  /// The algebra must outlive the sampler.
  HereditarySampler(const FDAlgebra<F>& A, std::vector<std::size_t> dims);

  std::string describe() const override { return "hereditary"; }
  Sample<F> draw(Rng& rng) const override;

 private:
  const FDAlgebra<F>* algebra_;
  std::vector<std::size_t> dims_;
};

/// Constructed sampler for algebras with exactly one loop per vertex and
/// commutativity relations: each loop is a random conjugate of the nilpotent
/// n×n Jordan block, each other arrow x: s -> t a random solution X of
/// loop_t·X = X·loop_s.
template <class F>
class JordanSampler final : public Sampler<F> {
 public:
  JordanSampler(const FDAlgebra<F>& A, std::size_t n);

  std::string describe() const override { return "jordan"; }
  Sample<F> draw(Rng& rng) const override;

 private:
  const FDAlgebra<F>* algebra_;
  std::size_t n_;
  std::vector<ArrowId> loop_at_;
};

/// Always returns the same module.
template <class F>
class ConstantSampler final : public Sampler<F> {
 public:
  explicit ConstantSampler(Rep<F> M) : module_(std::move(M)) {}
  std::string describe() const override { return "constant"; }
  Sample<F> draw(Rng&) const override { return {module_, std::nullopt}; }
  /// The parameter is ignored.
  Rep<F> at(const typename F::value_type&) const override { return module_; }

 private:
  Rep<F> module_;
};

}  // namespace modvar
