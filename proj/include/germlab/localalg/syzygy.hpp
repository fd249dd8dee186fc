#pragma once

#include <algorithm>
#include <unordered_map>
#include <vector>

#include "germlab/localalg/module_span.hpp"

namespace germlab {

struct RelationTerm {
  std::size_t unknown;
  Polynomial coeff;
};

/// Linear system sum_k c_{e,k} u_k = rhs_e whose unknowns u_k are polynomials
/// of bounded degree. Solutions are exact polynomial identities.
struct LinearRelation {
  VarsPtr vars;
  std::vector<int> degree_bound;  // per unknown; negative forces the unknown to zero
  std::vector<bool> output;       // unknowns reported as module components
  std::vector<std::vector<RelationTerm>> equations;
  PolyVector rhs;  // empty for a homogeneous relation
  /// Equations are imposed on monomials of degree <= trunc only (jet mode).
  int trunc = kInfiniteOrder;

  std::size_t num_unknowns() const { return degree_bound.size(); }

  std::size_t add_unknown(int bound, bool is_output = true) {
    degree_bound.push_back(bound);
    output.push_back(is_output);
    return degree_bound.size() - 1;
  }
};

struct RelationSolution {
  bool consistent = true;
  /// Degree of the first monomial equation that could not be satisfied.
  int failing_level = -1;
  PolyVector particular;
  /// Basis of the homogeneous solutions in degree-filtration order.
  std::vector<PolyVector> nullspace;
};

inline RelationSolution solve_relation(const LinearRelation& rel, bool want_nullspace = true) {
  const VarsPtr& vars = rel.vars;
  std::size_t n = vars->size(), K = rel.num_unknowns();
  for (const auto& eq : rel.equations)
    for (const auto& t : eq)
      if (t.unknown >= K) throw StructuralError("relation references an undeclared unknown");
  // slots: auxiliary unknowns first, then outputs by degree
  std::vector<std::pair<std::size_t, Monomial>> slots;
  for (std::size_t k = 0; k < K; ++k)
    if (!rel.output[k] && rel.degree_bound[k] >= 0)
      for (const auto& m : monomials_up_to(n, rel.degree_bound[k])) slots.push_back({k, m});
  int maxb = -1;
  for (std::size_t k = 0; k < K; ++k)
    if (rel.output[k]) maxb = std::max(maxb, rel.degree_bound[k]);
  for (int d = 0; d <= maxb; ++d) {
    auto monos = monomials_of_degree(n, d);
    for (std::size_t k = 0; k < K; ++k)
      if (rel.output[k] && rel.degree_bound[k] >= d)
        for (const auto& m : monos) slots.push_back({k, m});
  }
  // unknown -> equations it appears in
  std::vector<std::vector<std::pair<std::size_t, const Polynomial*>>> uses(K);
  for (std::size_t e = 0; e < rel.equations.size(); ++e)
    for (const auto& t : rel.equations[e]) uses[t.unknown].push_back({e, &t.coeff});
  std::vector<std::unordered_map<Monomial, std::uint32_t, MonomialHash>> row_of(rel.equations.size());
  std::vector<SparseVec> rows;
  std::vector<Rational> rhs;
  std::vector<int> level;
  auto row_id = [&](std::size_t e, const Monomial& m) {
    auto [it, ins] = row_of[e].emplace(m, static_cast<std::uint32_t>(rows.size()));
    if (ins) {
      rows.emplace_back();
      rhs.emplace_back(0);
      level.push_back(m.degree());
    }
    return it->second;
  };
  for (std::uint32_t s = 0; s < slots.size(); ++s) {
    const auto& [k, m] = slots[s];
    for (const auto& [e, c] : uses[k])
      for (const auto& [cm, cv] : c->terms()) {
        if (cm.degree() + m.degree() > rel.trunc) break;
        SparseVec& r = rows[row_id(e, cm * m)];
        if (!r.cols.empty() && r.cols.back() == s) {
          r.vals.back() += cv;
        } else {
          r.cols.push_back(s);
          r.vals.push_back(cv);
        }
      }
  }
  if (!rel.rhs.empty()) {
    if (rel.rhs.size() != rel.equations.size()) throw StructuralError("relation rhs length mismatch");
    for (std::size_t e = 0; e < rel.rhs.size(); ++e)
      for (const auto& [m, c] : rel.rhs[e].terms())
        if (m.degree() <= rel.trunc) rhs[row_id(e, m)] += c;
  }
  SparseLinearSystem sys(slots.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    SparseVec clean;
    for (std::size_t k = 0; k < rows[r].size(); ++k) clean.push(rows[r].cols[k], rows[r].vals[k]);
    sys.add_equation(std::move(clean), rhs[r], level[r]);
  }
  auto sol = sys.solve(want_nullspace, false);
  RelationSolution out;
  out.consistent = sol.consistent;
  out.failing_level = sol.failing_level;
  if (!sol.consistent) return out;
  auto to_vector = [&](auto&& value_at) {
    PolyVector v(K, Polynomial(vars));
    for (std::size_t s = 0; s < slots.size(); ++s) {
      Rational x = value_at(s);
      if (sgn(x) != 0) v[slots[s].first].add_term(slots[s].second, x);
    }
    return v;
  };
  out.particular = to_vector([&](std::size_t s) { return sol.particular[s]; });
  for (const auto& nv : sol.nullspace) {
    PolyVector v(K, Polynomial(vars));
    for (std::size_t k = 0; k < nv.size(); ++k) v[slots[nv.cols[k]].first].add_term(slots[nv.cols[k]].second, nv.vals[k]);
    out.nullspace.push_back(std::move(v));
  }
  return out;
}

/// Components of v belonging to output unknowns.
inline PolyVector output_part(const LinearRelation& rel, const PolyVector& v) {
  PolyVector r;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (rel.output[k]) r.push_back(v[k]);
  return r;
}

/// Greedy minimal generating set: candidates are taken by increasing degree
/// and kept only when not in the span of the monomial multiples (of total
/// degree within the current degree) of the generators already kept.
inline std::vector<PolyVector> minimize_generators(const VarsPtr& vars, std::size_t rank,
                                                   std::vector<PolyVector> cands) {
  std::stable_sort(cands.begin(), cands.end(),
                   [](const PolyVector& a, const PolyVector& b) { return degree_of(a) < degree_of(b); });
  int maxdeg = -1;
  for (const auto& c : cands) maxdeg = std::max(maxdeg, degree_of(c));
  std::vector<PolyVector> gens;
  if (maxdeg < 0) return gens;
  std::size_t n = vars->size();
  JetIndex idx(n, rank, maxdeg);
  Eliminator S(idx.size());
  std::vector<int> gdeg;
  int level = -1;
  for (const auto& c : cands) {
    int d = degree_of(c);
    if (d < 0) continue;
    while (level < d) {
      ++level;
      for (std::size_t i = 0; i < gens.size(); ++i) {
        int k = level - gdeg[i];
        if (k < 1) continue;
        for (const auto& a : monomials_of_degree(n, k)) {
          PolyVector w;
          for (const auto& p : gens[i]) w.push_back(p.multiply_monomial(a));
          S.add(idx.row(w));
        }
      }
    }
    if (S.add(idx.row(c))) {
      gens.push_back(c);
      gdeg.push_back(d);
    }
  }
  return gens;
}

/// Generators, through the degree bounds of the relation, of the module of
/// solutions restricted to the output unknowns.
inline ModuleSpan syzygy_solve(const LinearRelation& rel) {
  if (!rel.rhs.empty()) throw StructuralError("syzygy_solve: relation must be homogeneous");
  auto sol = solve_relation(rel, true);
  std::size_t rank = static_cast<std::size_t>(std::count(rel.output.begin(), rel.output.end(), true));
  std::vector<PolyVector> cands;
  for (const auto& v : sol.nullspace) {
    PolyVector o = output_part(rel, v);
    if (!is_zero(o)) cands.push_back(std::move(o));
  }
  ModuleSpan M(rel.vars, rank);
  int maxb = 0;
  for (std::size_t k = 0; k < rel.num_unknowns(); ++k)
    if (rel.output[k]) maxb = std::max(maxb, rel.degree_bound[k]);
  M.trunc_degree = maxb;
  M.add(minimize_generators(rel.vars, rank, std::move(cands)));
  return M;
}

}  // namespace germlab
