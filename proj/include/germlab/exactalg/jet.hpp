#pragma once

#include <vector>

#include "germlab/exactalg/matrix.hpp"
#include "germlab/exactalg/polynomial.hpp"

namespace germlab {

/// Linear part of a tuple of polynomials: M(j, i) = coefficient of x_i in p_j.
inline RationalMatrix linear_part(const PolyVector& p) {
  if (p.empty()) return RationalMatrix();
  std::size_t n = p.front().nvars();
  RationalMatrix m(p.size(), n);
  for (std::size_t j = 0; j < p.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) m(j, i) = p[j].coefficient(Monomial::unit(n, i));
  return m;
}

inline PolyVector truncate_jet(const PolyVector& p, int d) {
  PolyVector r;
  for (const auto& x : p) r.push_back(x.truncate(d));
  return r;
}

inline PolyVector compose(const PolyVector& outer, const PolyVector& inner, int trunc = kInfiniteOrder) {
  PolyVector r;
  for (const auto& x : outer) r.push_back(compose(x, inner, trunc));
  return r;
}

inline PolyVector identity_map(const VarsPtr& vars) {
  PolyVector r;
  for (std::size_t i = 0; i < vars->size(); ++i) r.push_back(Polynomial::variable(vars, i));
  return r;
}

inline PolyVector apply_linear(const RationalMatrix& a, const PolyVector& x) {
  PolyVector r;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Polynomial s(x.front().vars());
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (sgn(a(i, j)) != 0) s += x[j] * a(i, j);
    r.push_back(std::move(s));
  }
  return r;
}

/// D-jet of the inverse of a germ of diffeomorphism (k^s,0) -> (k^s,0).
/// Throws when the linear part is singular or phi(0) != 0.
inline PolyVector formal_inverse_jet(const PolyVector& phi, int D) {
  if (phi.empty()) return {};
  const VarsPtr& vars = phi.front().vars();
  std::size_t s = vars->size();
  if (phi.size() != s) throw StructuralError("formal_inverse_jet: map is not square");
  for (const auto& p : phi)
    if (sgn(p.constant_term()) != 0) throw StructuralError("formal_inverse_jet: map does not fix the origin");
  auto inv = linear_part(phi).inverse();
  if (!inv) throw StructuralError("formal_inverse_jet: singular linear part");
  PolyVector x = identity_map(vars);
  PolyVector psi = apply_linear(*inv, x);
  // Each pass fixes one more degree of phi(psi(x)) = x.
  for (int k = 2; k <= D; ++k) {
    PolyVector err = compose(phi, psi, k);
    for (std::size_t j = 0; j < s; ++j) err[j] -= x[j];
    PolyVector corr = apply_linear(*inv, err);
    for (std::size_t j = 0; j < s; ++j) psi[j] = (psi[j] - corr[j]).truncate(D);
  }
  return truncate_jet(psi, D);
}

}  // namespace germlab
