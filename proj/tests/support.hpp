#pragma once

#include <string>
#include <vector>

#include "modvar/algebra.hpp"
#include "modvar/io.hpp"
#include "modvar/rep.hpp"

namespace modvar::tst {

inline std::string source_path(const std::string& rel) { return std::string(MODVAR_SOURCE_DIR) + "/" + rel; }

inline AlgebraSpec spec(const std::string& name) {
  return load_algebra_spec(source_path("fixtures/algebras/" + name + ".json"));
}

template <class F = PrimeField>
FDAlgebra<F> algebra(const std::string& name, const F& field = F{}) {
  return build_algebra(spec(name), field);
}

template <class F = PrimeField>
Rep<F> module(const FDAlgebra<F>& A, const std::string& name) {
  return load_module(A.quiver(), A.field(), source_path("fixtures/modules/" + name + ".json"));
}

// M_λ over the local algebra with loops a, b: a = λ·E21, b = E21.
template <class F>
Rep<F> m_lambda(const FDAlgebra<F>& A, const typename F::value_type& lambda) {
  const F& f = A.field();
  Rep<F> M = Rep<F>::zero(A.quiver(), f, {2});
  M.mats[A.quiver().index_of("a")](1, 0) = lambda;
  M.mats[A.quiver().index_of("b")](1, 0) = f.one();
  return M;
}

template <class F>
Rep<F> m_lambda(const FDAlgebra<F>& A, std::int64_t lambda) {
  return m_lambda(A, A.field().from_int(lambda));
}

// Kronecker representation K -> K with maps (x, y).
template <class F>
Rep<F> kron11(const FDAlgebra<F>& A, std::int64_t x, std::int64_t y) {
  const F& f = A.field();
  Rep<F> M = Rep<F>::zero(A.quiver(), f, {1, 1});
  M.mats[0](0, 0) = f.from_int(x);
  M.mats[1](0, 0) = f.from_int(y);
  return M;
}

}  // namespace modvar::tst
