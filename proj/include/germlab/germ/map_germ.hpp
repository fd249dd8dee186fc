#pragma once

#include <string>
#include <vector>

#include "germlab/exactalg.hpp"
#include "germlab/localalg.hpp"
#include "germlab/status.hpp"

namespace germlab {

/// Polynomial representative of a map-germ (k^n,0) -> (k^p,0).
class MapGerm {
 public:
  MapGerm() = default;
  MapGerm(VarsPtr source, VarsPtr target, PolyVector components)
      : source_(std::move(source)), target_(std::move(target)), comps_(std::move(components)) {
    if (comps_.size() != target_->size()) throw StructuralError("number of components differs from target dimension");
    for (auto& c : comps_) {
      if (!c.vars()) c = Polynomial(source_);
      if (!same_vars(c.vars(), source_)) throw StructuralError("component over a different ring than the source");
      if (sgn(c.constant_term()) != 0) throw StructuralError("germ must fix origin");
    }
    for (const auto& t : target_->names())
      if (source_->find(t)) throw StructuralError("variable '" + t + "' used in both source and target");
  }

  static MapGerm parse(std::vector<std::string> source, std::vector<std::string> target,
                       const std::vector<std::string>& comps) {
    auto s = make_vars(std::move(source));
    auto t = make_vars(std::move(target));
    PolyVector c;
    for (const auto& txt : comps) c.push_back(parse_polynomial(txt, s));
    return MapGerm(s, t, std::move(c));
  }

  const VarsPtr& source() const { return source_; }
  const VarsPtr& target() const { return target_; }
  const PolyVector& components() const { return comps_; }
  const Polynomial& operator[](std::size_t j) const { return comps_[j]; }
  std::size_t n() const { return source_->size(); }
  std::size_t p() const { return target_->size(); }

  /// J(j, i) = d f_j / d x_i
  std::vector<PolyVector> jacobian() const {
    std::vector<PolyVector> J;
    for (const auto& c : comps_) {
      PolyVector row;
      for (std::size_t i = 0; i < n(); ++i) row.push_back(c.derivative(i));
      J.push_back(std::move(row));
    }
    return J;
  }

  RationalMatrix jacobian_at_origin() const { return linear_part(comps_); }

  /// eta o f for a tuple of polynomials over the target ring.
  PolyVector pull_back(const PolyVector& eta) const { return compose(eta, comps_); }

  /// Index of the source variable equal to component j, if the component is
  /// literally that variable.
  std::optional<std::size_t> passthrough_var(std::size_t j) const {
    const auto& t = comps_[j].terms();
    if (t.size() != 1) return std::nullopt;
    const auto& [m, c] = *t.begin();
    if (c != 1 || m.degree() != 1) return std::nullopt;
    for (std::size_t i = 0; i < n(); ++i)
      if (m[i] == 1) return i;
    return std::nullopt;
  }

 private:
  VarsPtr source_, target_;
  PolyVector comps_;
};

inline std::string to_string(const MapGerm& f) {
  std::string s = "(";
  for (std::size_t j = 0; j < f.p(); ++j) s += (j ? ", " : "") + to_string(f[j]);
  return s + ")";
}

/// Unfolding F(x, l) = (f_l(x), l) with the parameters as the last m source
/// and target coordinates.
class Unfolding {
 public:
  Unfolding(MapGerm total, std::size_t m) : F_(std::move(total)), m_(m) {
    if (m_ > F_.n() || m_ > F_.p()) throw StructuralError("more parameters than coordinates");
    for (std::size_t k = 0; k < m_; ++k) {
      std::size_t j = F_.p() - m_ + k, i = F_.n() - m_ + k;
      auto pv = F_.passthrough_var(j);
      if (!pv || *pv != i) throw StructuralError("last components of an unfolding must be its parameters");
    }
  }

  const MapGerm& total() const { return F_; }
  std::size_t m() const { return m_; }
  std::size_t base_n() const { return F_.n() - m_; }
  std::size_t base_p() const { return F_.p() - m_; }

  /// f_0 as a germ on the first n-m source coordinates.
  MapGerm base() const {
    std::vector<std::string> sn(F_.source()->names().begin(), F_.source()->names().begin() + base_n());
    std::vector<std::string> tn(F_.target()->names().begin(), F_.target()->names().begin() + base_p());
    auto s = make_vars(sn), t = make_vars(tn);
    PolyVector sub;
    for (std::size_t i = 0; i < F_.n(); ++i)
      sub.push_back(i < base_n() ? Polynomial::variable(s, i) : Polynomial(s));
    PolyVector comps;
    for (std::size_t j = 0; j < base_p(); ++j) comps.push_back(compose(F_[j], sub));
    return MapGerm(s, t, std::move(comps));
  }

 private:
  MapGerm F_;
  std::size_t m_;
};

inline std::size_t corank(const MapGerm& f) {
  return std::min(f.n(), f.p()) - f.jacobian_at_origin().rank();
}

/// dim O_n / f*m_p O_n for n = p.
inline CodimResult multiplicity(const MapGerm& f, int D = 12) {
  if (f.n() != f.p()) throw StructuralError("multiplicity needs equidimensional germ");
  return finite_codim_certified(ideal_span(f.source(), f.components()), D);
}

/// tf(theta_n) + f*m_p theta(f), both with full multipliers.
inline ModuleSpan tke_span(const MapGerm& f) {
  ModuleSpan M(f.source(), f.p());
  std::vector<PolyVector> tf;
  for (std::size_t i = 0; i < f.n(); ++i) {
    PolyVector col;
    for (std::size_t j = 0; j < f.p(); ++j) col.push_back(f[j].derivative(i));
    tf.push_back(std::move(col));
  }
  M.add(std::move(tf));
  std::vector<PolyVector> fm;
  for (std::size_t j = 0; j < f.p(); ++j)
    for (std::size_t k = 0; k < f.p(); ++k) {
      PolyVector v(f.p(), Polynomial(f.source()));
      v[k] = f[j];
      fm.push_back(std::move(v));
    }
  M.add(std::move(fm));
  return M;
}

inline std::vector<PolyVector> unit_vectors(const VarsPtr& vars, std::size_t r) {
  std::vector<PolyVector> out;
  for (std::size_t k = 0; k < r; ++k) {
    PolyVector v(r, Polynomial(vars));
    v[k] = Polynomial::constant(vars, Rational(1));
    out.push_back(std::move(v));
  }
  return out;
}

/// tf(theta_n) + wf(theta_p).
inline ModuleSpan tae_span(const MapGerm& f) {
  ModuleSpan M(f.source(), f.p());
  std::vector<PolyVector> tf;
  for (std::size_t i = 0; i < f.n(); ++i) {
    PolyVector col;
    for (std::size_t j = 0; j < f.p(); ++j) col.push_back(f[j].derivative(i));
    tf.push_back(std::move(col));
  }
  M.add(std::move(tf));
  M.add(unit_vectors(f.source(), f.p()), MultiplierRing::via(f.components(), f.target()));
  return M;
}

inline CodimResult ke_codim(const MapGerm& f, int D = 12) { return finite_codim_certified(tke_span(f), D); }

inline CodimResult ae_codim(const MapGerm& f, int D = 12) { return finite_codim_certified(tae_span(f), D); }

/// Monomial vectors spanning theta(f) / (TK_e f + constants); their number is
/// the number of parameters of a minimal stable unfolding.
inline std::variant<std::vector<QuotientBasisElement>, NotFiniteUpTo> minimal_unfolding_data(const MapGerm& f,
                                                                                           int D = 12) {
  ModuleSpan M = tke_span(f);
  M.add(unit_vectors(f.source(), f.p()), MultiplierRing::constants());
  auto r = finite_codim_certified(M, D);
  if (auto* nf = std::get_if<NotFiniteUpTo>(&r)) return *nf;
  return std::get<CodimCertificate>(r).cobasis;
}

namespace detail {

inline std::string fresh_name(const std::string& stem, std::size_t k, const VarList& a, const VarList& b) {
  std::string name = stem + std::to_string(k);
  while (a.find(name) || b.find(name)) name += "_";
  return name;
}

}  // namespace detail

/// F(x, l) = (f(x) + sum_k l_k fbar_k(x), l).
inline Unfolding build_standard_unfolding(const MapGerm& f, const std::vector<QuotientBasisElement>& basis,
                                          const std::string& param_stem = "l", const std::string& target_stem = "L") {
  std::size_t m = basis.size();
  auto sn = f.source()->names();
  auto tn = f.target()->names();
  for (std::size_t k = 0; k < m; ++k) {
    sn.push_back(detail::fresh_name(param_stem, k + 1, *f.source(), *f.target()));
    tn.push_back(detail::fresh_name(target_stem, k + 1, *f.source(), *f.target()));
  }
  auto s = make_vars(sn), t = make_vars(tn);
  PolyVector comps;
  for (std::size_t j = 0; j < f.p(); ++j) comps.push_back(f[j].remap(s));
  for (std::size_t k = 0; k < m; ++k) {
    Monomial mm(s->size());
    for (std::size_t i = 0; i < f.n(); ++i) mm.set(i, basis[k].monomial[i]);
    mm.set(f.n() + k, 1);
    comps[basis[k].component].add_term(mm, Rational(1));
  }
  for (std::size_t k = 0; k < m; ++k) comps.push_back(Polynomial::variable(s, f.n() + k));
  return Unfolding(MapGerm(s, t, std::move(comps)), m);
}

struct StabilityResult {
  Status status = Status::UnknownAtDegree;
  int degree = 0;
  std::optional<CodimCertificate> certificate;
};

inline StabilityResult is_stable(const MapGerm& f, int D = 12) {
  StabilityResult out;
  out.degree = D;
  auto r = ae_codim(f, D);
  if (auto* c = std::get_if<CodimCertificate>(&r)) {
    out.certificate = *c;
    if (!c->heuristic) out.status = c->codim == 0 ? Status::Yes : Status::No;
  }
  return out;
}

}  // namespace germlab
