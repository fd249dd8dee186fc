#pragma once

#include <string>
#include <vector>

#include "germlab/germ/map_germ.hpp"

namespace germlab {

inline UnsupportedShape no_method(const std::string& why) {
  return UnsupportedShape("discriminant method unavailable: " + why);
}

struct DiscriminantEq {
  Polynomial H;  // over the target ring
  bool reduced = true;
  /// Empty discriminant; every vector field lifts.
  bool smooth = false;
  /// "smooth", "graph", "monogenic" or "plane-curve".
  std::string shape;
};

/// Components that are literally a source variable, matched greedily; the
/// remaining components and variables form the core of the germ.
struct PassthroughSplit {
  std::vector<int> source_of;          // per component, -1 for core components
  std::vector<std::size_t> core_comps;
  std::vector<std::size_t> core_vars;
  std::vector<int> comp_of;            // per source variable, -1 for core variables
};

inline PassthroughSplit split_passthrough(const MapGerm& F) {
  PassthroughSplit s;
  s.source_of.assign(F.p(), -1);
  s.comp_of.assign(F.n(), -1);
  for (std::size_t j = 0; j < F.p(); ++j) {
    auto v = F.passthrough_var(j);
    if (v && s.comp_of[*v] < 0) {
      s.source_of[j] = static_cast<int>(*v);
      s.comp_of[*v] = static_cast<int>(j);
    } else {
      s.core_comps.push_back(j);
    }
  }
  for (std::size_t i = 0; i < F.n(); ++i)
    if (s.comp_of[i] < 0) s.core_vars.push_back(i);
  return s;
}

inline DiscriminantEq discriminant_equation(const MapGerm& F) {
  auto split = split_passthrough(F);
  const auto& T = F.target();
  DiscriminantEq out;
  if (split.core_comps.empty()) {
    if (!split.core_vars.empty()) throw no_method("germ is not finite (more source than target directions)");
    out.H = Polynomial::constant(T, 1);
    out.smooth = true;
    out.shape = "smooth";
    return out;
  }
  if (split.core_vars.size() > 1) throw no_method("core has corank above one");
  // mixed ring: target coordinates plus the core source variable
  auto tn = T->names();
  if (!split.core_vars.empty()) tn.push_back(F.source()->name(split.core_vars[0]));
  auto R = make_vars(tn);
  PolyVector sub;
  for (std::size_t i = 0; i < F.n(); ++i) {
    if (split.comp_of[i] >= 0)
      sub.push_back(Polynomial::variable(R, static_cast<std::size_t>(split.comp_of[i])));
    else
      sub.push_back(Polynomial::variable(R, T->size()));
  }
  auto graph = [&](std::size_t j) { return Polynomial::variable(R, j) - compose(F[j], sub); };
  Polynomial res;
  if (split.core_vars.empty()) {
    if (split.core_comps.size() != 1) throw no_method("image has codimension above one");
    res = graph(split.core_comps[0]);
    out.shape = "graph";
  } else if (split.core_comps.size() == 1) {
    Polynomial g = graph(split.core_comps[0]);
    res = sylvester_resultant(g, g.derivative(T->size()), T->size());
    out.shape = "monogenic";
  } else if (split.core_comps.size() == 2) {
    res = sylvester_resultant(graph(split.core_comps[0]), graph(split.core_comps[1]), T->size());
    out.shape = "plane-curve";
  } else {
    throw no_method("image has codimension above one");
  }
  if (res.is_zero()) throw no_method("eliminant vanishes identically");
  out.H = normalize_content(squarefree_part(res.remap(T)));
  if (out.H.is_constant()) throw no_method("eliminant is a unit");
  return out;
}

}  // namespace germlab
