#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <optional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "germlab/exactalg/monomial.hpp"

namespace germlab {

/// Ordered list of variable names. Polynomials share one instance per ring.
class VarList {
 public:
  explicit VarList(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.size() > kMaxVars) throw StructuralError("too many variables (limit 16)");
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (!index_.emplace(names_[i], i).second)
        throw StructuralError("duplicate variable name '" + names_[i] + "'");
    }
  }
  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> find(const std::string& n) const {
    auto it = index_.find(n);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t index(const std::string& n) const {
    auto i = find(n);
    if (!i) throw StructuralError("unknown variable '" + n + "'");
    return *i;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

using VarsPtr = std::shared_ptr<const VarList>;

inline VarsPtr make_vars(std::vector<std::string> names) {
  return std::make_shared<const VarList>(std::move(names));
}

inline bool same_vars(const VarsPtr& a, const VarsPtr& b) {
  return a == b || (a && b && a->names() == b->names());
}

/// Concatenate two variable lists; names must be disjoint.
inline VarsPtr join_vars(const VarsPtr& a, const VarsPtr& b) {
  auto n = a->names();
  n.insert(n.end(), b->names().begin(), b->names().end());
  return make_vars(std::move(n));
}

inline constexpr int kInfiniteOrder = INT_MAX;

/// Sparse multivariate polynomial with rational coefficients. Zero
/// coefficients are never stored, so equal polynomials have equal term maps.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational>;

  Polynomial() = default;
  explicit Polynomial(VarsPtr vars) : vars_(std::move(vars)) {}

  static Polynomial constant(const VarsPtr& vars, const Rational& c) {
    Polynomial p(vars);
    p.add_term(Monomial(vars->size()), c);
    return p;
  }
  static Polynomial variable(const VarsPtr& vars, std::size_t i) {
    Polynomial p(vars);
    p.add_term(Monomial::unit(vars->size(), i), Rational(1));
    return p;
  }
  static Polynomial variable(const VarsPtr& vars, const std::string& name) {
    return variable(vars, vars->index(name));
  }
  static Polynomial term(const VarsPtr& vars, const Monomial& m, const Rational& c) {
    Polynomial p(vars);
    p.add_term(m, c);
    return p;
  }

  const VarsPtr& vars() const { return vars_; }
  std::size_t nvars() const { return vars_ ? vars_->size() : 0; }
  const Terms& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }

  /// Total degree; -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }
  /// Lowest degree of a term; kInfiniteOrder for zero.
  int order() const { return terms_.empty() ? kInfiniteOrder : terms_.begin()->first.degree(); }

  int degree_in(std::size_t var) const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
    return d;
  }

  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  Rational constant_term() const { return coefficient(Monomial(nvars())); }

  /// Highest term in the graded order.
  const std::pair<const Monomial, Rational>& leading() const { return *terms_.rbegin(); }

  void add_term(const Monomial& m, const Rational& c) {
    if (germlab::is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (germlab::is_zero(it->second)) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Polynomial& operator*=(const Rational& c) {
    if (germlab::is_zero(c)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
  }
  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& [m, v] : r.terms_) v = -v;
    return r;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) { return multiply(a, b, kInfiniteOrder); }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  /// Product with every term of degree > trunc dropped.
  static Polynomial multiply(const Polynomial& a, const Polynomial& b, int trunc) {
    check_same(a, b);
    Polynomial r(a.vars_ ? a.vars_ : b.vars_);
    for (const auto& [ma, ca] : a.terms_) {
      if (ma.degree() > trunc) break;
      for (const auto& [mb, cb] : b.terms_) {
        if (ma.degree() + mb.degree() > trunc) break;
        r.add_term(ma * mb, ca * cb);
      }
    }
    return r;
  }

  Polynomial multiply_monomial(const Monomial& m, const Rational& c = Rational(1)) const {
    Polynomial r(vars_);
    if (germlab::is_zero(c)) return r;
    for (const auto& [mm, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), mm * m, v * c);
    return r;
  }

  Polynomial pow(int e, int trunc = kInfiniteOrder) const {
    Polynomial r = constant(vars_, Rational(1));
    Polynomial base = *this;
    while (e > 0) {
      if (e & 1) r = multiply(r, base, trunc);
      e >>= 1;
      if (e) base = multiply(base, base, trunc);
    }
    return r;
  }

  bool operator==(const Polynomial& o) const {
    if (!terms_.empty() || !o.terms_.empty()) check_same(*this, o);
    return terms_ == o.terms_;
  }

  /// Terms of degree <= n.
  Polynomial truncate(int n) const {
    Polynomial r(vars_);
    for (const auto& [m, c] : terms_) {
      if (m.degree() > n) break;
      r.terms_.emplace_hint(r.terms_.end(), m, c);
    }
    return r;
  }
  Polynomial homogeneous_part(int d) const {
    Polynomial r(vars_);
    for (const auto& [m, c] : terms_)
      if (m.degree() == d) r.terms_.emplace_hint(r.terms_.end(), m, c);
    return r;
  }

  Polynomial derivative(std::size_t var) const {
    Polynomial r(vars_);
    for (const auto& [m, c] : terms_) {
      int e = m[var];
      if (e == 0) continue;
      Monomial mm = m;
      mm.set(var, e - 1);
      r.add_term(mm, c * e);
    }
    return r;
  }

  Rational evaluate(const std::vector<Rational>& point) const {
    Rational s = 0;
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < m.size(); ++i)
        for (int k = 0; k < m[i]; ++k) t *= point[i];
      s += t;
    }
    return s;
  }

  /// Re-express over another variable list by name. Variables that occur
  /// must exist in the target list.
  Polynomial remap(const VarsPtr& target) const {
    Polynomial r(target);
    std::vector<std::size_t> where(nvars());
    std::vector<bool> known(nvars(), false);
    for (std::size_t i = 0; i < nvars(); ++i) {
      if (auto j = target->find(vars_->name(i))) {
        where[i] = *j;
        known[i] = true;
      }
    }
    for (const auto& [m, c] : terms_) {
      Monomial mm(target->size());
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!known[i]) throw StructuralError("variable '" + vars_->name(i) + "' not in target ring");
        mm.set(where[i], m[i]);
      }
      r.add_term(mm, c);
    }
    return r;
  }

  bool involves(std::size_t var) const {
    for (const auto& [m, c] : terms_)
      if (m[var] > 0) return true;
    return false;
  }

  /// Rational content: positive gcd of numerators over lcm of denominators.
  Rational content() const {
    Integer g = 0, l = 1;
    for (const auto& [m, c] : terms_) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    }
    if (g == 0) return Rational(0);
    Rational r{g, l};
    r.canonicalize();
    return r;
  }

  friend void check_same(const Polynomial& a, const Polynomial& b) {
    if (!a.vars_ || !b.vars_) return;
    if (!same_vars(a.vars_, b.vars_)) throw StructuralError("polynomials over different variable lists");
  }

 private:
  void adopt(const Polynomial& o) {
    if (!vars_) vars_ = o.vars_;
    else check_same(*this, o);
  }

  VarsPtr vars_;
  Terms terms_;
};

/// Divide by the content and make the leading coefficient positive.
inline Polynomial normalize_content(const Polynomial& p) {
  if (p.is_zero()) return p;
  Rational c = p.content();
  if (sgn(p.leading().second) < 0) c = -c;
  return p * Rational(1 / c);
}

/// Substitute subs[i] for variable i of p. All substitutes share one ring.
/// Terms of degree > trunc are dropped at every step.
inline Polynomial compose(const Polynomial& p, const std::vector<Polynomial>& subs, int trunc = kInfiniteOrder) {
  if (subs.size() != p.nvars()) throw StructuralError("compose: substitution arity mismatch");
  VarsPtr out_vars;
  for (const auto& s : subs) {
    if (!out_vars) out_vars = s.vars();
    else if (!same_vars(out_vars, s.vars())) throw StructuralError("compose: substitutes over different rings");
  }
  if (!out_vars) {
    // zero-variable source: p is a constant
    throw StructuralError("compose: cannot infer target ring");
  }
  std::vector<std::vector<Polynomial>> powers(subs.size());
  auto power = [&](std::size_t i, int e) -> const Polynomial& {
    auto& v = powers[i];
    if (v.empty()) v.push_back(Polynomial::constant(out_vars, Rational(1)));
    while (static_cast<int>(v.size()) <= e) v.push_back(Polynomial::multiply(v.back(), subs[i], trunc));
    return v[e];
  };
  Polynomial r(out_vars);
  for (const auto& [m, c] : p.terms()) {
    Polynomial t = Polynomial::constant(out_vars, c);
    for (std::size_t i = 0; i < m.size() && !t.is_zero(); ++i)
      if (m[i] > 0) t = Polynomial::multiply(t, power(i, m[i]), trunc);
    r += t;
  }
  return r.truncate(trunc);
}

/// Substitution by variable name; unnamed variables are mapped to
/// themselves, which requires them to exist in the substitutes' ring.
inline Polynomial compose(const Polynomial& p, const std::map<std::string, Polynomial>& subs, int trunc = kInfiniteOrder) {
  if (subs.empty()) return p.truncate(trunc);
  VarsPtr out = subs.begin()->second.vars();
  std::vector<Polynomial> v;
  for (std::size_t i = 0; i < p.nvars(); ++i) {
    auto it = subs.find(p.vars()->name(i));
    v.push_back(it != subs.end() ? it->second : Polynomial::variable(out, p.vars()->name(i)));
  }
  return compose(p, v, trunc);
}

using PolyVector = std::vector<Polynomial>;

inline int order_of(const PolyVector& v) {
  int o = kInfiniteOrder;
  for (const auto& p : v) o = std::min(o, p.order());
  return o;
}
inline int degree_of(const PolyVector& v) {
  int d = -1;
  for (const auto& p : v) d = std::max(d, p.degree());
  return d;
}
inline bool is_zero(const PolyVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Polynomial& p) { return p.is_zero(); });
}

}  // namespace germlab
