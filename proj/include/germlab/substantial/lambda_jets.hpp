#pragma once

#include <vector>

#include "germlab/liftable/lift.hpp"
#include "germlab/verdict.hpp"

namespace germlab {

/// Span L of the parameter-block 1-jets of projectable liftable fields. A
/// multiple a*g contributes a(0) times the jet of g, so the generators' jets
/// span L.
struct LambdaJetSpace {
  std::size_t m = 0;
  std::vector<RationalMatrix> basis;
  /// Generator of the projectable module each basis matrix comes from.
  std::vector<std::size_t> generator_index;

  Json to_json() const {
    Json b = Json::array();
    for (const auto& M : basis) b.push_back(germlab::to_json(M));
    return Json{{"m", m}, {"basis", b}, {"generators", generator_index}};
  }
};

/// M(k, s) = coefficient of Lambda_s in component p+k of g.
inline RationalMatrix lambda_jet(const PolyVector& g, std::size_t p, std::size_t m) {
  RationalMatrix M(m, m);
  std::size_t s = p + m;
  for (std::size_t k = 0; k < m; ++k) {
    const auto& c = g[p + k];
    if (sgn(c.constant_term()) != 0) throw StructuralError("field is not projectable: parameter component nonzero at 0");
    for (std::size_t j = 0; j < p; ++j)
      if (sgn(c.coefficient(Monomial::unit(s, j))) != 0)
        throw StructuralError("field is not projectable: parameter component has a linear term in X");
    for (std::size_t t = 0; t < m; ++t) M(k, t) = c.coefficient(Monomial::unit(s, p + t));
  }
  return M;
}

inline LambdaJetSpace lambda_jet_space(const ModuleSpan& P, std::size_t m) {
  LambdaJetSpace L;
  L.m = m;
  std::size_t p = P.rank - m;
  Eliminator E(m * m);
  auto gens = P.full_generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    RationalMatrix M = lambda_jet(gens[i], p, m);
    SparseVec v;
    for (std::size_t k = 0; k < m * m; ++k) v.push(static_cast<std::uint32_t>(k), M(k / m, k % m));
    if (E.add(std::move(v))) {
      L.basis.push_back(M);
      L.generator_index.push_back(i);
    }
  }
  return L;
}

namespace detail {

/// Integer points of {1..K}^r in lexicographic order; stops when f returns true.
template <class F>
bool grid_search(std::size_t r, int K, F&& f) {
  std::vector<int> a(r, 1);
  while (true) {
    if (f(a)) return true;
    std::size_t i = r;
    while (i > 0 && a[i - 1] == K) a[--i] = 1;
    if (i == 0) return false;
    ++a[i - 1];
  }
}

inline Json coefficients_json(const std::vector<Rational>& c) { return to_json(c); }

}  // namespace detail

/// Is there a combination of L that is diagonal with every diagonal entry
/// nonzero?
inline Verdict decide_substantial(const LambdaJetSpace& L) {
  Verdict v;
  v.decision = "substantial";
  std::size_t m = L.m, r = L.basis.size();
  v.step("lambda jet space", Json{{"dimension", r}, {"m", m}});
  if (m == 0) {
    v.status = Status::Yes;
    v.witness = Json{{"combination", Json::array()}, {"diagonal", Json::array()}};
    v.note = "no parameters";
    return v;
  }
  // off-diagonal entries of sum c_i B_i must vanish
  std::size_t rows = m * m - m;
  RationalMatrix C(std::max<std::size_t>(rows, 1), r);
  std::size_t row = 0;
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t s = 0; s < m; ++s) {
      if (k == s) continue;
      for (std::size_t i = 0; i < r; ++i) C(row, i) = L.basis[i](k, s);
      ++row;
    }
  std::vector<std::vector<Rational>> Z;
  if (r > 0) Z = C.nullspace();
  v.step("diagonal combinations", Json{{"dimension", Z.size()}});
  auto diag_of = [&](const std::vector<Rational>& c, std::size_t k) {
    Rational x(0);
    for (std::size_t i = 0; i < r; ++i) x += c[i] * L.basis[i](k, k);
    return x;
  };
  for (std::size_t k = 0; k < m; ++k) {
    bool all_zero = true;
    for (const auto& z : Z)
      if (sgn(diag_of(z, k)) != 0) all_zero = false;
    if (all_zero) {
      v.status = Status::No;
      v.certificate = Json{{"vanishing_diagonal_entry", k + 1},
                           {"reason", "entry (k,k) vanishes on every diagonal combination of the lambda jet space"}};
      return v;
    }
  }
  std::vector<Rational> best;
  detail::grid_search(Z.size(), static_cast<int>(m) + 1, [&](const std::vector<int>& a) {
    std::vector<Rational> c(r, Rational(0));
    for (std::size_t t = 0; t < Z.size(); ++t)
      for (std::size_t i = 0; i < r; ++i) c[i] += Rational(a[t]) * Z[t][i];
    for (std::size_t k = 0; k < m; ++k)
      if (sgn(diag_of(c, k)) == 0) return false;
    best = c;
    return true;
  });
  std::vector<Rational> d;
  for (std::size_t k = 0; k < m; ++k) d.push_back(diag_of(best, k));
  v.status = Status::Yes;
  v.witness = Json{{"combination", detail::coefficients_json(best)}, {"diagonal", to_json(d)}};
  return v;
}

/// Is there a combination of L without zero eigenvalue? Decided through
/// det(sum t_i B_i) as a polynomial in the t_i.
inline Verdict decide_weak_substantial(const LambdaJetSpace& L) {
  Verdict v;
  v.decision = "weak_substantial";
  std::size_t m = L.m, r = L.basis.size();
  if (m == 0) {
    v.status = Status::Yes;
    v.note = "no parameters";
    return v;
  }
  if (r == 0) {
    v.status = Status::No;
    v.certificate = Json{{"reason", "lambda jet space is zero"}};
    return v;
  }
  std::vector<std::string> tn;
  for (std::size_t i = 0; i < r; ++i) tn.push_back("t" + std::to_string(i + 1));
  auto T = make_vars(tn);
  std::vector<std::vector<Polynomial>> M(m, std::vector<Polynomial>(m, Polynomial(T)));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t s = 0; s < m; ++s)
        if (sgn(L.basis[i](k, s)) != 0) M[k][s] += Polynomial::variable(T, i) * L.basis[i](k, s);
  Polynomial det = determinant(M, T);
  v.step("determinant", Json{{"det", to_string(det)}});
  if (det.is_zero()) {
    v.status = Status::No;
    v.certificate = Json{{"reason", "det(sum t_i B_i) vanishes identically"}};
    return v;
  }
  std::vector<Rational> best;
  detail::grid_search(r, static_cast<int>(m) + 1, [&](const std::vector<int>& a) {
    std::vector<Rational> pt(a.begin(), a.end());
    if (sgn(det.evaluate(pt)) == 0) return false;
    best = pt;
    return true;
  });
  RationalMatrix W(m, m);
  for (std::size_t i = 0; i < r; ++i) W = W + best[i] * L.basis[i];
  auto spec = char_poly_spectrum(W);
  v.status = Status::Yes;
  Json cp = Json::array();
  for (const auto& c : spec.char_poly) cp.push_back(to_string(c));
  v.witness = Json{{"combination", to_json(best)}, {"jet", to_json(W)}, {"char_poly_ascending", cp},
                   {"rational_eigenvalues", to_json(spec.eigenvalues())}};
  return v;
}

}  // namespace germlab
