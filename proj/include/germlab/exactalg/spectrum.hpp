#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "germlab/exactalg/matrix.hpp"
#include "germlab/exactalg/resultant.hpp"

namespace germlab {

/// Dense univariate polynomial, coefficients from the constant term up.
using UniPoly = std::vector<Rational>;

inline void trim(UniPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

inline Rational evaluate(const UniPoly& p, const Rational& x) {
  Rational r = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
  return r;
}

/// det(t I - M) by fraction-free elimination over Q[t].
inline UniPoly characteristic_polynomial(const RationalMatrix& M) {
  if (M.rows() != M.cols()) throw StructuralError("characteristic polynomial of non-square matrix");
  std::size_t n = M.rows();
  auto tv = make_vars({"t"});
  Polynomial t = Polynomial::variable(tv, 0);
  std::vector<std::vector<Polynomial>> a(n, std::vector<Polynomial>(n, Polynomial(tv)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = Polynomial::constant(tv, -M(i, j));
      if (i == j) a[i][j] += t;
    }
  Polynomial d = determinant(std::move(a), tv);
  UniPoly out(n + 1);
  for (const auto& [m, c] : d.terms()) out[m[0]] = c;
  return out;
}

struct SpectrumReport {
  UniPoly char_poly;
  /// Distinct rational eigenvalues, ascending, with algebraic multiplicity.
  std::vector<std::pair<Rational, int>> rational_roots;
  /// Monic factor carrying the non-rational eigenvalues (empty when none).
  UniPoly residual;
  bool all_rational = false;
  bool all_nonzero = false;
  bool all_positive = false;

  /// Eigenvalue multiset, ascending, repeated by multiplicity.
  std::vector<Rational> eigenvalues() const {
    std::vector<Rational> out;
    for (const auto& [r, k] : rational_roots)
      for (int i = 0; i < k; ++i) out.push_back(r);
    return out;
  }
};

namespace detail {

inline std::vector<Integer> positive_divisors(Integer n) {
  if (n < 0) n = -n;
  std::vector<std::pair<Integer, int>> fac;
  Integer m = n;
  for (Integer p = 2; p * p <= m; ++p) {
    int k = 0;
    while (m % p == 0) {
      m /= p;
      ++k;
    }
    if (k) fac.push_back({p, k});
  }
  if (m > 1) fac.push_back({m, 1});
  std::vector<Integer> divs{1};
  for (const auto& [p, k] : fac) {
    std::size_t base = divs.size();
    Integer pk = 1;
    for (int e = 1; e <= k; ++e) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

/// Divide p by (t - r); requires r to be a root.
inline UniPoly deflate(const UniPoly& p, const Rational& r) {
  std::size_t d = p.size() - 1;
  UniPoly q(d);
  Rational carry = 0;
  for (std::size_t k = d; k >= 1; --k) {
    carry = p[k] + carry * r;
    q[k - 1] = carry;
    if (k == 1) break;
  }
  return q;
}

}  // namespace detail

inline SpectrumReport spectrum_of_polynomial(UniPoly p) {
  trim(p);
  SpectrumReport rep;
  rep.char_poly = p;
  if (p.empty()) throw StructuralError("spectrum of the zero polynomial");
  rep.all_nonzero = sgn(p.front()) != 0;
  UniPoly rest = p;
  auto take_root = [&](const Rational& r) {
    int k = 0;
    while (rest.size() > 1 && sgn(evaluate(rest, r)) == 0) {
      rest = detail::deflate(rest, r);
      ++k;
    }
    if (k) rep.rational_roots.push_back({r, k});
  };
  take_root(Rational(0));
  if (rest.size() > 1) {
    // integer coefficients for the rational root test
    Integer l = 1;
    for (const auto& c : rest) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    Integer a0 = Rational(rest.front() * l).get_num(), ad = Rational(rest.back() * l).get_num();
    auto ps = detail::positive_divisors(a0), qs = detail::positive_divisors(ad);
    std::vector<Rational> cands;
    for (const auto& pp : ps)
      for (const auto& qq : qs) {
        Rational c{pp, qq};
        c.canonicalize();
        cands.push_back(c);
        cands.push_back(-c);
      }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    for (const auto& c : cands) {
      if (rest.size() <= 1) break;
      take_root(c);
    }
  }
  std::sort(rep.rational_roots.begin(), rep.rational_roots.end());
  if (rest.size() > 1) {
    Rational lc = rest.back();
    for (auto& c : rest) c /= lc;
    rep.residual = rest;
  }
  rep.all_rational = rep.residual.empty();
  rep.all_positive = rep.all_rational && std::all_of(rep.rational_roots.begin(), rep.rational_roots.end(),
                                                     [](const auto& rk) { return sgn(rk.first) > 0; });
  return rep;
}

inline SpectrumReport char_poly_spectrum(const RationalMatrix& M) {
  return spectrum_of_polynomial(characteristic_polynomial(M));
}

}  // namespace germlab
