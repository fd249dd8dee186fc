#pragma once

#include <optional>
#include <vector>

#include "germlab/exactalg/polynomial.hpp"

namespace germlab {

/// q with a = q*b, or nullopt when b does not divide a.
inline std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw StructuralError("division by the zero polynomial");
  check_same(a, b);
  Polynomial q(a.vars() ? a.vars() : b.vars());
  Polynomial r = a;
  const auto& [lb, cb] = b.leading();
  while (!r.is_zero()) {
    const auto& [lr, cr] = r.leading();
    if (!lb.divides(lr)) return std::nullopt;
    Monomial t = lb.cofactor_in(lr);
    Rational c = cr / cb;
    q.add_term(t, c);
    r -= b.multiply_monomial(t, c);
  }
  return q;
}

inline Polynomial divide_or_throw(const Polynomial& a, const Polynomial& b) {
  auto q = divide_exact(a, b);
  if (!q) throw StructuralError("inexact polynomial division");
  return *q;
}

/// Coefficient of var^k in p, as a polynomial not involving var.
inline Polynomial coefficient_in(const Polynomial& p, std::size_t var, int k) {
  Polynomial r(p.vars());
  for (const auto& [m, c] : p.terms()) {
    if (m[var] != k) continue;
    Monomial mm = m;
    mm.set(var, 0);
    r.add_term(mm, c);
  }
  return r;
}

/// Determinant of a square polynomial matrix by fraction-free elimination.
inline Polynomial determinant(std::vector<std::vector<Polynomial>> m, const VarsPtr& vars) {
  std::size_t n = m.size();
  if (n == 0) return Polynomial::constant(vars, Rational(1));
  for (const auto& row : m)
    if (row.size() != n) throw StructuralError("determinant of non-square matrix");
  Polynomial prev = Polynomial::constant(vars, Rational(1));
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < n && m[p][k].is_zero()) ++p;
      if (p == n) return Polynomial(vars);
      std::swap(m[p], m[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Polynomial num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        m[i][j] = divide_or_throw(num, prev);
      }
      m[i][k] = Polynomial(vars);
    }
    prev = m[k][k];
  }
  Polynomial d = m[n - 1][n - 1];
  if (d.vars() == nullptr) d = Polynomial(vars);
  return negate ? -d : d;
}

/// Sylvester-matrix resultant with respect to var, content-normalized with
/// positive leading coefficient. The result does not involve var.
inline Polynomial sylvester_resultant(const Polynomial& p, const Polynomial& q, std::size_t var) {
  check_same(p, q);
  const VarsPtr& vars = p.vars() ? p.vars() : q.vars();
  if (p.is_zero() || q.is_zero()) return Polynomial(vars);
  int dp = p.degree_in(var), dq = q.degree_in(var);
  std::size_t n = static_cast<std::size_t>(dp + dq);
  if (n == 0) return Polynomial::constant(vars, Rational(1));
  std::vector<Polynomial> a, b;
  for (int k = dp; k >= 0; --k) a.push_back(coefficient_in(p, var, k));
  for (int k = dq; k >= 0; --k) b.push_back(coefficient_in(q, var, k));
  std::vector<std::vector<Polynomial>> s(n, std::vector<Polynomial>(n, Polynomial(vars)));
  for (int i = 0; i < dq; ++i)
    for (int k = 0; k <= dp; ++k) s[i][i + k] = a[k];
  for (int i = 0; i < dp; ++i)
    for (int k = 0; k <= dq; ++k) s[dq + i][i + k] = b[k];
  return normalize_content(determinant(std::move(s), vars));
}

namespace detail {

inline int lowest_var(const Polynomial& a, const Polynomial& b) {
  for (std::size_t v = 0; v < a.nvars(); ++v)
    if (a.involves(v) || b.involves(v)) return static_cast<int>(v);
  return -1;
}

inline Polynomial gcd_rec(const Polynomial& a, const Polynomial& b);

/// gcd of the coefficients of p viewed as a polynomial in var.
inline Polynomial content_in(const Polynomial& p, std::size_t var) {
  Polynomial g(p.vars());
  for (int k = p.degree_in(var); k >= 0; --k) {
    Polynomial c = coefficient_in(p, var, k);
    if (c.is_zero()) continue;
    g = g.is_zero() ? normalize_content(c) : gcd_rec(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

inline Polynomial primitive_in(const Polynomial& p, std::size_t var) {
  Polynomial c = content_in(p, var);
  return normalize_content(divide_or_throw(p, c));
}

inline Polynomial pseudo_remainder(Polynomial a, const Polynomial& b, std::size_t var) {
  int db = b.degree_in(var);
  Polynomial lb = coefficient_in(b, var, db);
  while (!a.is_zero() && a.degree_in(var) >= db) {
    int da = a.degree_in(var);
    Polynomial la = coefficient_in(a, var, da);
    Monomial shift = Monomial::unit(a.nvars(), var, da - db);
    a = lb * a - (la * b).multiply_monomial(shift);
    a = normalize_content(a);
  }
  return a;
}

inline Polynomial gcd_rec(const Polynomial& a, const Polynomial& b) {
  const VarsPtr& vars = a.vars() ? a.vars() : b.vars();
  if (a.is_zero()) return normalize_content(b);
  if (b.is_zero()) return normalize_content(a);
  Polynomial one = Polynomial::constant(vars, Rational(1));
  if (a.is_constant() || b.is_constant()) return one;
  int v = lowest_var(a, b);
  std::size_t var = static_cast<std::size_t>(v);
  if (!a.involves(var)) return gcd_rec(a, content_in(b, var));
  if (!b.involves(var)) return gcd_rec(content_in(a, var), b);
  Polynomial ca = content_in(a, var), cb = content_in(b, var);
  Polynomial g_cont = gcd_rec(ca, cb);
  Polynomial r0 = normalize_content(divide_or_throw(a, ca));
  Polynomial r1 = normalize_content(divide_or_throw(b, cb));
  if (r0.degree_in(var) < r1.degree_in(var)) std::swap(r0, r1);
  while (!r1.is_zero() && r1.degree_in(var) > 0) {
    Polynomial r = pseudo_remainder(r0, r1, var);
    r0 = std::move(r1);
    r1 = r.is_zero() ? r : primitive_in(r, var);
  }
  Polynomial g = r1.is_zero() ? primitive_in(r0, var) : one;
  return normalize_content(g_cont * g);
}

}  // namespace detail

/// Greatest common divisor, content-normalized with positive leading term.
inline Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  check_same(a, b);
  return detail::gcd_rec(a, b);
}

namespace detail {

/// Sufficient test for squarefreeness: for each variable v, p restricted to a
/// line parallel to the v-axis keeps its degree in v and is squarefree. A
/// repeated factor involving v would survive every such restriction.
inline bool squarefree_by_restriction(const Polynomial& p) {
  static const int pts[] = {3, -5, 7, 11, -13, 17, 19, -23, 29, 31, -37, 41, 43, -47, 53, 59};
  auto line = make_vars({"t"});
  for (std::size_t v = 0; v < p.nvars(); ++v) {
    if (!p.involves(v)) continue;
    bool ok = false;
    for (int attempt = 0; attempt < 3 && !ok; ++attempt) {
      std::vector<Polynomial> sub;
      for (std::size_t i = 0; i < p.nvars(); ++i)
        sub.push_back(i == v ? Polynomial::variable(line, 0)
                             : Polynomial::constant(line, Rational(pts[(i + 5 * attempt) % 16] + attempt)));
      Polynomial u = compose(p, sub);
      if (u.degree_in(0) != p.degree_in(v)) continue;
      ok = gcd_rec(u, u.derivative(0)).is_constant();
    }
    if (!ok) return false;
  }
  return true;
}

}  // namespace detail

/// p divided by gcd(p, all partial derivatives), content-normalized.
inline Polynomial squarefree_part(const Polynomial& p) {
  if (p.is_zero() || p.is_constant()) return normalize_content(p);
  if (detail::squarefree_by_restriction(p)) return normalize_content(p);
  Polynomial g = p;
  for (std::size_t v = 0; v < p.nvars() && !g.is_constant(); ++v) {
    if (!p.involves(v)) continue;
    g = gcd(g, p.derivative(v));
  }
  return normalize_content(divide_or_throw(p, g));
}

}  // namespace germlab
