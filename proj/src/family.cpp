#include "modvar/family.hpp"

#include <cctype>

#include "modvar/errors.hpp"
#include "modvar/exactla/kernels.hpp"
#include "modvar/instantiate.hpp"
#include "modvar/rep.hpp"

namespace modvar {

template <class F>
class Expr<F>::Parser {
 public:
  Parser(std::string_view text, const F& field, Expr& out) : s_(text), f_(field), out_(out) {}

  int run() {
    int n = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("expression '" + std::string(s_) + "': " + what + " at column " + std::to_string(pos_ + 1));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  int push(Kind k, int l = -1, int r = -1, value_type v = {}) {
    out_.nodes_.push_back(Node{k, std::move(v), l, r});
    return static_cast<int>(out_.nodes_.size()) - 1;
  }
  int expr() {
    int n = term();
    for (;;) {
      if (eat('+'))
        n = push(Kind::Add, n, term());
      else if (eat('-'))
        n = push(Kind::Sub, n, term());
      else
        return n;
    }
  }
  int term() {
    int n = unary();
    for (;;) {
      if (eat('*'))
        n = push(Kind::Mul, n, unary());
      else if (eat('/'))
        n = push(Kind::Div, n, unary());
      else
        return n;
    }
  }
  int unary() {
    if (eat('-')) return push(Kind::Neg, unary());
    return primary();
  }
  int primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (eat('(')) {
      int n = expr();
      if (!eat(')')) fail("expected ')'");
      return n;
    }
    if (s_[pos_] == 'L') {
      ++pos_;
      return push(Kind::Param);
    }
    if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return push(Kind::Const, -1, -1, f_.parse(s_.substr(start, pos_ - start)));
    }
    fail("expected integer, 'L' or '('");
  }

  std::string_view s_;
  const F& f_;
  Expr& out_;
  std::size_t pos_ = 0;
};

template <class F>
Expr<F> Expr<F>::parse(std::string_view text, const F& field) {
  Expr e;
  e.nodes_.clear();
  e.text_ = std::string(text);
  Parser p(text, field, e);
  e.root_ = p.run();
  return e;
}

template <class F>
Expr<F> Expr<F>::constant(const value_type& v, const F& field) {
  Expr e;
  e.nodes_ = {Node{Kind::Const, v, -1, -1}};
  e.root_ = 0;
  e.text_ = field.to_string(v);
  return e;
}

template <class F>
Expr<F> Expr<F>::parameter() {
  Expr e;
  e.nodes_ = {Node{Kind::Param, {}, -1, -1}};
  e.root_ = 0;
  e.text_ = "L";
  return e;
}

template <class F>
typename Expr<F>::value_type Expr<F>::eval(const F& field, const value_type& lambda) const {
  return eval_node(field, root_, lambda);
}

template <class F>
typename Expr<F>::value_type Expr<F>::eval_node(const F& f, int n, const value_type& lambda) const {
  const Node& node = nodes_[static_cast<std::size_t>(n)];
  switch (node.kind) {
    case Kind::Const: return node.value;
    case Kind::Param: return lambda;
    case Kind::Neg: return f.neg(eval_node(f, node.lhs, lambda));
    case Kind::Add: return f.add(eval_node(f, node.lhs, lambda), eval_node(f, node.rhs, lambda));
    case Kind::Sub: return f.sub(eval_node(f, node.lhs, lambda), eval_node(f, node.rhs, lambda));
    case Kind::Mul: return f.mul(eval_node(f, node.lhs, lambda), eval_node(f, node.rhs, lambda));
    case Kind::Div: {
      auto den = eval_node(f, node.rhs, lambda);
      if (f.is_zero(den))
        throw SpecializationError("pole of '" + text_ + "' at parameter " + f.to_string(lambda));
      return f.div(eval_node(f, node.lhs, lambda), den);
    }
  }
  return f.zero();
}

template <class F>
bool Expr<F>::depends_on_parameter() const {
  for (const auto& n : nodes_)
    if (n.kind == Kind::Param) return true;
  return false;
}

template <class F>
ModuleFamily<F> ModuleFamily<F>::constant(const Quiver& q, const Rep<F>& M) {
  check_shapes(q, M);
  ModuleFamily fam;
  fam.field = M.field;
  fam.dims = M.dims;
  for (const auto& m : M.mats) {
    std::vector<Expr<F>> e;
    for (const auto& x : m.data()) e.push_back(Expr<F>::constant(x, M.field));
    fam.entries.push_back(std::move(e));
  }
  return fam;
}

template <class F>
bool ModuleFamily<F>::is_excluded(const value_type& lambda) const {
  for (const auto& x : excluded)
    if (field.equal(x, lambda)) return true;
  return false;
}

template <class F>
bool ModuleFamily<F>::depends_on_parameter() const {
  for (const auto& row : entries)
    for (const auto& e : row)
      if (e.depends_on_parameter()) return true;
  return false;
}

template <class F>
Rep<F> ModuleFamily<F>::specialize(const Quiver& q, const value_type& lambda) const {
  if (is_excluded(lambda)) throw SpecializationError("parameter " + field.to_string(lambda) + " is excluded");
  if (dims.size() != q.n_vertices()) throw InputError("family dimension vector does not match the quiver");
  if (entries.size() != q.n_arrows()) throw InputError("family does not give one matrix per arrow");
  Rep<F> M = Rep<F>::zero(q, field, dims);
  for (ArrowId a = 0; a < q.n_arrows(); ++a) {
    auto& m = M.mats[a];
    if (entries[a].size() != m.rows() * m.cols())
      throw InputError("family matrix for arrow '" + q.arrow(a).name + "' has the wrong number of entries");
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = entries[a][r * m.cols() + c].eval(field, lambda);
  }
  return M;
}

template <class F>
Rep<F> Sampler<F>::at(const value_type&) const {
  throw InputError("sampler '" + describe() + "' has no parameter to specialize");
}

template <class F>
FamilySampler<F>::FamilySampler(Quiver q, ModuleFamily<F> family) : quiver_(std::move(q)), family_(std::move(family)) {}

template <class F>
Sample<F> FamilySampler<F>::draw(Rng& rng) const {
  for (int k = 0; k < kMaxAttempts; ++k) {
    auto lambda = family_.field.uniform(rng);
    if (family_.is_excluded(lambda)) continue;
    try {
      return {family_.specialize(quiver_, lambda), lambda};
    } catch (const SpecializationError&) {
    }
  }
  throw InputError("all " + std::to_string(kMaxAttempts) + " sampled parameters were excluded or poles");
}

template <class F>
Rep<F> FamilySampler<F>::at(const value_type& lambda) const {
  return family_.specialize(quiver_, lambda);
}

template <class F>
HereditarySampler<F>::HereditarySampler(const FDAlgebra<F>& A, std::vector<std::size_t> dims)
    : algebra_(&A), dims_(std::move(dims)) {
  Rng probe(0);
  (void)random_rep(A, dims_, probe);  // validates hereditary + shape
}

template <class F>
Sample<F> HereditarySampler<F>::draw(Rng& rng) const {
  return {random_rep(*algebra_, dims_, rng), std::nullopt};
}

template <class F>
JordanSampler<F>::JordanSampler(const FDAlgebra<F>& A, std::size_t n) : algebra_(&A), n_(n) {
  const Quiver& q = A.quiver();
  if (n == 0) throw InputError("Jordan sampler needs block size n >= 1");
  loop_at_.assign(q.n_vertices(), q.n_arrows());
  for (ArrowId a = 0; a < q.n_arrows(); ++a) {
    const auto& arr = q.arrow(a);
    if (arr.src != arr.tgt) continue;
    if (loop_at_[arr.src] != q.n_arrows())
      throw InputError("Jordan sampler needs at most one loop per vertex");
    loop_at_[arr.src] = a;
  }
  for (Vertex v = 0; v < q.n_vertices(); ++v)
    if (loop_at_[v] == q.n_arrows()) throw InputError("Jordan sampler needs a loop at every vertex");
}

template <class F>
Sample<F> JordanSampler<F>::draw(Rng& rng) const {
  const FDAlgebra<F>& A = *algebra_;
  const Quiver& q = A.quiver();
  const F& f = A.field();
  Rep<F> M = Rep<F>::zero(q, f, std::vector<std::size_t>(q.n_vertices(), n_));
  Matrix<F> J(f, n_, n_);
  for (std::size_t k = 0; k + 1 < n_; ++k) J(k + 1, k) = f.one();
  for (Vertex v = 0; v < q.n_vertices(); ++v) {
    auto g = random_group_element(f, {n_}, rng).blocks[0];
    M.mats[loop_at_[v]] = *inverse(g) * J * g;
  }
  for (ArrowId a = 0; a < q.n_arrows(); ++a) {
    const auto& arr = q.arrow(a);
    if (arr.src == arr.tgt) continue;
    const Matrix<F>& Lt = M.mats[loop_at_[arr.tgt]];
    const Matrix<F>& Ls = M.mats[loop_at_[arr.src]];
    // Unknown X[r,c] at r·n + c; equations (Lt·X − X·Ls)[r,c] = 0.
    Matrix<F> sys(f, n_ * n_, n_ * n_);
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c)
        for (std::size_t k = 0; k < n_; ++k) {
          auto& e1 = sys(r * n_ + c, k * n_ + c);
          e1 = f.add(e1, Lt(r, k));
          auto& e2 = sys(r * n_ + c, r * n_ + k);
          e2 = f.sub(e2, Ls(k, c));
        }
    Matrix<F> K = kernel_basis(sys);
    Matrix<F> X(f, n_, n_);
    for (std::size_t b = 0; b < K.cols(); ++b) {
      auto coeff = f.uniform(rng);
      for (std::size_t r = 0; r < n_; ++r)
        for (std::size_t c = 0; c < n_; ++c) X(r, c) = f.add(X(r, c), f.mul(coeff, K(r * n_ + c, b)));
    }
    M.mats[a] = X;
  }
  return {std::move(M), std::nullopt};
}

#define MODVAR_INSTANTIATE_FAMILY(F) \
  template class Expr<F>;            \
  template struct ModuleFamily<F>;   \
  template class Sampler<F>;         \
  template class FamilySampler<F>;   \
  template class HereditarySampler<F>; \
  template class JordanSampler<F>;
MODVAR_FOR_EACH_FIELD(MODVAR_INSTANTIATE_FAMILY)

}  // namespace modvar
