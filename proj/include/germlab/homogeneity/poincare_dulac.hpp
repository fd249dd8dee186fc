#pragma once

#include <vector>

#include "germlab/liftable/lift.hpp"

namespace germlab {

struct PdResult {
  /// Diagonal of the semisimple linear part, in the order of the new coordinates.
  std::vector<Rational> spectrum;
  /// Old coordinates as a jet in the new ones, X = from_normal(Z).
  PolyVector from_normal;
  /// New coordinates as a jet in the old ones, Z = to_normal(X).
  PolyVector to_normal;
  /// Linear part plus resonant terms, through degree D (same variable names).
  VectorField normal;
  int degree = 0;
  /// Every eigenvalue positive: finitely many resonances.
  bool poincare_domain = false;
};

/// Resonance of the monomial beta in component j for the spectrum d.
inline bool resonant(const Monomial& beta, std::size_t j, const std::vector<Rational>& d) {
  Rational s(0);
  for (std::size_t i = 0; i < d.size(); ++i) s += Rational(beta[i]) * d[i];
  return s == d[j];
}

/// Conjugate a field with rational diagonalizable linear part to Poincare-Dulac
/// normal form through degree D.
inline PdResult pd_normalize(const VectorField& vf, int D) {
  const VarsPtr& V = vf.vars;
  std::size_t s = V->size();
  RationalMatrix A = one_jet(vf);
  auto spec = char_poly_spectrum(A);
  if (!spec.all_rational) throw UnsupportedShape("pd_normalize: spectrum is not rational");
  // eigenbasis; a diagonal linear part keeps the given axes
  RationalMatrix P = RationalMatrix::identity(s);
  std::vector<Rational> d;
  if (A.is_diagonal()) {
    for (std::size_t i = 0; i < s; ++i) d.push_back(A(i, i));
  } else {
    std::size_t col = 0;
    for (const auto& [r, mult] : spec.rational_roots) {
      auto ns = (A - r * RationalMatrix::identity(s)).nullspace();
      if (ns.size() != static_cast<std::size_t>(mult))
        throw UnsupportedShape("pd_normalize: linear part is not diagonalizable");
      for (const auto& vec : ns) {
        for (std::size_t i = 0; i < s; ++i) P(i, col) = vec[i];
        d.push_back(r);
        ++col;
      }
    }
  }
  auto Pinv = *P.inverse();
  PolyVector Z = identity_map(V);
  // X = P Z
  PolyVector from = apply_linear(P, Z);
  PolyVector to = apply_linear(Pinv, Z);
  VectorField cur(V, truncate_jet(apply_linear(Pinv, compose(vf.comps, from, D)), D));
  for (int k = 2; k <= D; ++k) {
    PolyVector phi(s, Polynomial(V));
    bool any = false;
    for (std::size_t j = 0; j < s; ++j) {
      Polynomial hk = cur.comps[j].homogeneous_part(k);
      for (const auto& [m, c] : hk.terms()) {
        if (resonant(m, j, d)) continue;
        Rational den(0);
        for (std::size_t i = 0; i < s; ++i) den += Rational(m[i]) * d[i];
        den -= d[j];
        phi[j].add_term(m, c / den);
        any = true;
      }
    }
    if (!any) continue;
    // old = new + phi(new)
    PolyVector change = Z;
    for (std::size_t j = 0; j < s; ++j) change[j] += phi[j];
    auto inv = formal_inverse_jet(change, D);
    // d(inv)(cur) o change, kept at order D throughout
    PolyVector pushed(s, Polynomial(V));
    for (std::size_t j = 0; j < s; ++j)
      for (std::size_t i = 0; i < s; ++i) pushed[j] += (inv[j].derivative(i) * cur.comps[i]).truncate(D);
    cur = VectorField(V, truncate_jet(compose(pushed, change, D), D));
    from = truncate_jet(compose(from, change, D), D);
    to = truncate_jet(compose(inv, to, D), D);
  }
  PdResult out;
  out.spectrum = d;
  out.from_normal = from;
  out.to_normal = to;
  out.normal = cur;
  out.degree = D;
  out.poincare_domain = std::all_of(d.begin(), d.end(), [](const Rational& r) { return sgn(r) > 0; });
  return out;
}

}  // namespace germlab
