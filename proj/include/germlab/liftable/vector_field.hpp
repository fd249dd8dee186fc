#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "germlab/exactalg.hpp"

namespace germlab {

/// Polynomial vector field sum_j comps[j] d/dX_j on the named ambient space.
struct VectorField {
  VarsPtr vars;
  PolyVector comps;

  VectorField() = default;
  VectorField(VarsPtr v, PolyVector c) : vars(std::move(v)), comps(std::move(c)) {
    if (comps.size() != vars->size()) throw StructuralError("vector field arity differs from ambient dimension");
    for (auto& p : comps) {
      if (!p.vars()) p = Polynomial(vars);
      if (!same_vars(p.vars(), vars)) throw StructuralError("vector field component over another ring");
    }
  }

  static VectorField parse(const VarsPtr& v, const std::vector<std::string>& comps) {
    PolyVector c;
    for (const auto& s : comps) c.push_back(parse_polynomial(s, v));
    return VectorField(v, std::move(c));
  }

  static VectorField zero(const VarsPtr& v) { return VectorField(v, PolyVector(v->size(), Polynomial(v))); }

  std::size_t dim() const { return comps.size(); }
  bool vanishes_at_origin() const {
    for (const auto& c : comps)
      if (sgn(c.constant_term()) != 0) return false;
    return true;
  }
  bool operator==(const VectorField& o) const = default;

  /// Derivative of h along the field.
  Polynomial apply(const Polynomial& h) const {
    Polynomial r(vars);
    for (std::size_t j = 0; j < dim(); ++j)
      if (!comps[j].is_zero()) r += comps[j] * h.derivative(j);
    return r;
  }
};

inline std::string to_string(const VectorField& v) {
  std::string s;
  for (std::size_t j = 0; j < v.dim(); ++j) {
    if (v.comps[j].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + to_string(v.comps[j]) + ")*d/d" + v.vars->name(j);
  }
  return s.empty() ? "0" : s;
}

inline std::ostream& operator<<(std::ostream& os, const VectorField& v) { return os << to_string(v); }

/// Linear part of a field vanishing at the origin: M(j, i) = coefficient of X_i in comps[j].
inline RationalMatrix one_jet(const VectorField& v) {
  if (!v.vanishes_at_origin()) throw StructuralError("one_jet: field does not vanish at the origin");
  return linear_part(v.comps);
}

}  // namespace germlab
