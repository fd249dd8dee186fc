#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "germlab/liftable/discriminant.hpp"
#include "germlab/liftable/vector_field.hpp"

namespace germlab {

class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};


struct LiftModule {
  ModuleSpan span;  // over the target ring, rank p
  DiscriminantEq disc;
  int degree = 0;
  /// p generators with determinant a unit multiple of H: the module is free
  /// and these generate it (Saito's criterion).
  bool free_basis = false;
  /// The degree loop ended before D because the caller's goal was met.
  bool stopped_early = false;
  std::vector<PolyVector> generators() const { return span.full_generators(); }
};

struct LiftOptions {
  /// Skip the finiteness check; the caller vouches that Lift(F) = Derlog(H).
  bool hypotheses_asserted = false;
  int finiteness_degree = 10;
  /// Stop raising the degree once this holds for the module found so far.
  std::function<bool(const LiftModule&)> enough;
};

namespace detail {

/// Unit u with det(gens) = u * H, if one exists.
inline std::optional<Polynomial> saito_quotient(const std::vector<PolyVector>& gens, const Polynomial& H) {
  std::vector<std::vector<Polynomial>> m;
  for (const auto& g : gens) m.push_back(g);
  Polynomial det = determinant(m, H.vars());
  if (det.is_zero()) return std::nullopt;
  auto q = divide_exact(det, H);
  if (!q || sgn(q->constant_term()) == 0) return std::nullopt;
  return q;
}

/// A p-element subset satisfying Saito's criterion, searched among at most
/// `budget` subsets.
inline std::optional<std::vector<PolyVector>> saito_basis(const std::vector<PolyVector>& gens, std::size_t p,
                                                          const Polynomial& H, std::size_t budget = 64) {
  if (gens.size() < p) return std::nullopt;
  std::vector<std::size_t> pick(p);
  for (std::size_t k = 0; k < p; ++k) pick[k] = k;
  for (std::size_t tries = 0; tries < budget; ++tries) {
    std::vector<PolyVector> sub;
    for (auto k : pick) sub.push_back(gens[k]);
    if (saito_quotient(sub, H)) return sub;
    // next combination
    std::size_t k = p;
    while (k > 0 && pick[k - 1] == gens.size() - p + k - 1) --k;
    if (k == 0) break;
    ++pick[k - 1];
    for (std::size_t r = k; r < p; ++r) pick[r] = pick[r - 1] + 1;
  }
  return std::nullopt;
}

inline void check_lift_hypotheses(const MapGerm& F, const LiftOptions& opt) {
  if (opt.hypotheses_asserted) return;
  if (F.n() > F.p()) throw HypothesisError("lift module via the discriminant needs n <= p");
  auto r = ae_codim(F, opt.finiteness_degree);
  auto* c = std::get_if<CodimCertificate>(&r);
  if (!c || c->heuristic)
    throw HypothesisError("lift module equals Derlog of the discriminant only for A-finite germs; finiteness not certified through degree " +
                          std::to_string(opt.finiteness_degree));
}

}  // namespace detail

/// Vector fields eta with eta(H) in <H>, by increasing degree through D.
/// Stops early once Saito's criterion certifies a free basis.
inline LiftModule derlog(const Polynomial& H, int D, const std::function<bool(const LiftModule&)>& enough = {}) {
  const VarsPtr& T = H.vars();
  std::size_t p = T->size();
  LiftModule out;
  out.disc.H = H;
  if (H.is_constant()) {
    out.span = ModuleSpan(T, p);
    out.span.add(unit_vectors(T, p));
    out.span.trunc_degree = 0;
    out.free_basis = true;
    out.disc.smooth = true;
    return out;
  }
  // variables absent from H split off as constant fields
  std::vector<std::string> used;
  for (std::size_t j = 0; j < p; ++j)
    if (H.involves(j)) used.push_back(T->name(j));
  if (used.size() < p) {
    auto embed = [&](const LiftModule& sub) {
      std::vector<PolyVector> gens;
      for (const auto& g : sub.generators()) {
        PolyVector v(p, Polynomial(T));
        for (std::size_t k = 0; k < used.size(); ++k) v[T->index(used[k])] = g[k].remap(T);
        gens.push_back(std::move(v));
      }
      for (std::size_t j = 0; j < p; ++j)
        if (!H.involves(j)) gens.push_back(unit_vectors(T, p)[j]);
      LiftModule m;
      m.disc.H = H;
      m.span = ModuleSpan(T, p);
      m.span.trunc_degree = sub.span.trunc_degree;
      m.span.add(std::move(gens));
      m.degree = sub.degree;
      m.free_basis = sub.free_basis;
      m.stopped_early = sub.stopped_early;
      return m;
    };
    std::function<bool(const LiftModule&)> sub_enough;
    if (enough) sub_enough = [&](const LiftModule& sub) { return enough(embed(sub)); };
    out = embed(derlog(H.remap(make_vars(used)), D, sub_enough));
    return out;
  }
  std::vector<Polynomial> dH;
  for (std::size_t j = 0; j < p; ++j) dH.push_back(H.derivative(j));
  for (int d = 0; d <= D; ++d) {
    LinearRelation rel;
    rel.vars = T;
    rel.equations.emplace_back();
    for (std::size_t j = 0; j < p; ++j) {
      auto u = rel.add_unknown(d);
      if (!dH[j].is_zero()) rel.equations[0].push_back({u, dH[j]});
    }
    auto a = rel.add_unknown(d - 1, false);
    rel.equations[0].push_back({a, -H});
    out.span = syzygy_solve(rel);
    out.degree = d;
    auto gens = out.span.full_generators();
    if (auto basis = detail::saito_basis(gens, p, H)) {
      out.span = ModuleSpan(T, p);
      out.span.trunc_degree = d;
      out.span.add(std::move(*basis));
      out.free_basis = true;
      break;
    }
    if (enough && d < D && enough(out)) {
      out.stopped_early = true;
      break;
    }
  }
  return out;
}

inline LiftModule lift_module(const MapGerm& F, int D, const LiftOptions& opt = {}) {
  auto disc = discriminant_equation(F);
  detail::check_lift_hypotheses(F, opt);
  std::function<bool(const LiftModule&)> enough;
  if (opt.enough)
    enough = [&](const LiftModule& m) {
      LiftModule full = m;
      full.disc = disc;
      return opt.enough(full);
    };
  auto out = derlog(disc.H, D, enough);
  out.disc = disc;
  return out;
}

/// (dF xi)_j = sum_i dF_j/dx_i xi_i
inline PolyVector push_forward(const MapGerm& F, const PolyVector& xi) {
  PolyVector r(F.p(), Polynomial(F.source()));
  for (std::size_t j = 0; j < F.p(); ++j)
    for (std::size_t i = 0; i < F.n(); ++i)
      if (!xi[i].is_zero()) r[j] += F[j].derivative(i) * xi[i];
  return r;
}

struct LiftPair {
  VectorField eta;  // target
  VectorField xi;   // source
  bool exact = false;
  /// Jet degree through which eta o F = dF(xi) holds when not exact.
  int jet_degree = kInfiniteOrder;
};

struct NotLiftableAt {
  int degree = 0;
  /// Lowest jet level at which the linear system is inconsistent.
  int failing_level = -1;
};

using LowerResult = std::variant<LiftPair, NotLiftableAt>;

inline bool f_related(const MapGerm& F, const VectorField& eta, const VectorField& xi) {
  auto lhs = F.pull_back(eta.comps);
  auto rhs = push_forward(F, xi.comps);
  for (std::size_t j = 0; j < F.p(); ++j)
    if (!(lhs[j] - rhs[j]).is_zero()) return false;
  return true;
}

/// xi with dF(xi) = eta o F. Components of F equal to a source variable fix
/// the matching xi component directly.
inline LowerResult lower_partner(const MapGerm& F, const VectorField& eta, int D) {
  if (!same_vars(eta.vars, F.target())) throw StructuralError("lower_partner: field is not on the target");
  PolyVector R = F.pull_back(eta.comps);
  auto split = split_passthrough(F);
  const VarsPtr& S = F.source();
  int maxdeg = 1;
  for (const auto& c : F.components()) maxdeg = std::max(maxdeg, c.degree());
  int K = D + maxdeg;

  PolyVector xi(F.n(), Polynomial(S));
  for (std::size_t i = 0; i < F.n(); ++i)
    if (split.comp_of[i] >= 0) xi[i] = R[static_cast<std::size_t>(split.comp_of[i])];

  auto attempt = [&](int trunc) {
    LinearRelation rel;
    rel.vars = S;
    rel.trunc = trunc;
    std::vector<std::size_t> unk(F.n());
    for (auto i : split.core_vars) unk[i] = rel.add_unknown(K);
    for (auto j : split.core_comps) {
      std::vector<RelationTerm> eq;
      Polynomial rhs = R[j];
      for (std::size_t i = 0; i < F.n(); ++i) {
        Polynomial dj = F[j].derivative(i);
        if (dj.is_zero()) continue;
        if (split.comp_of[i] >= 0)
          rhs -= dj * xi[i];
        else
          eq.push_back({unk[i], dj});
      }
      rel.equations.push_back(std::move(eq));
      rel.rhs.push_back(std::move(rhs));
    }
    return solve_relation(rel, false);
  };

  LiftPair pair;
  pair.eta = eta;
  auto fill = [&](const RelationSolution& sol) {
    PolyVector x = xi;
    for (std::size_t k = 0; k < split.core_vars.size(); ++k) x[split.core_vars[k]] = sol.particular[k];
    return VectorField(S, std::move(x));
  };
  auto exact = attempt(kInfiniteOrder);
  if (exact.consistent) {
    pair.xi = fill(exact);
    pair.exact = f_related(F, pair.eta, pair.xi);
    if (pair.exact) return pair;
  }
  auto jet = attempt(D);
  if (!jet.consistent) return NotLiftableAt{D, jet.failing_level};
  pair.xi = fill(jet);
  for (auto& c : pair.xi.comps) c = c.truncate(D);
  pair.exact = false;
  pair.jet_degree = D;
  return pair;
}

/// Fields of L whose parameter components lie in <Lambda_1..Lambda_m>.
inline ModuleSpan projectable_filter(const ModuleSpan& L, std::size_t m, int D) {
  const VarsPtr& T = L.vars;
  std::size_t p = T->size() - m;
  auto gens = L.full_generators();
  ModuleSpan out(T, T->size());
  out.trunc_degree = D;
  if (m == 0) {
    out.add(gens);
    return out;
  }
  std::vector<std::string> bn(T->names().begin(), T->names().begin() + p);
  auto B = make_vars(bn);
  PolyVector at_zero;
  for (std::size_t i = 0; i < T->size(); ++i)
    at_zero.push_back(i < p ? Polynomial::variable(B, i) : Polynomial(B));
  // syzygies over O_p of the parameter components restricted to Lambda = 0
  LinearRelation rel;
  rel.vars = B;
  for (std::size_t i = 0; i < gens.size(); ++i) rel.add_unknown(D);
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<RelationTerm> eq;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Polynomial c = compose(gens[i][p + k], at_zero);
      if (!c.is_zero()) eq.push_back({i, c});
    }
    rel.equations.push_back(std::move(eq));
  }
  std::vector<PolyVector> cands;
  auto syz = syzygy_solve(rel).full_generators();
  for (const auto& s : syz) {
    PolyVector v(T->size(), Polynomial(T));
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (s[i].is_zero()) continue;
      Polynomial a = s[i].remap(T);
      for (std::size_t c = 0; c < T->size(); ++c) v[c] += a * gens[i][c];
    }
    if (!is_zero(v)) cands.push_back(std::move(v));
  }
  for (std::size_t k = 0; k < m; ++k)
    for (const auto& g : gens) {
      PolyVector v;
      for (const auto& c : g) v.push_back(c.multiply_monomial(Monomial::unit(T->size(), p + k)));
      cands.push_back(std::move(v));
    }
  out.add(minimize_generators(T, T->size(), std::move(cands)));
  return out;
}

/// Lambda = 0 and first p components of the projectable part of P.
inline ModuleSpan restrict_lift_to_base(const Unfolding& F, const ModuleSpan& P, int D) {
  std::size_t m = F.m(), p = F.base_p();
  auto proj = projectable_filter(P, m, D);
  auto B = F.base().target();
  const VarsPtr& T = P.vars;
  PolyVector at_zero;
  for (std::size_t i = 0; i < T->size(); ++i)
    at_zero.push_back(i < p ? Polynomial::variable(B, i) : Polynomial(B));
  std::vector<PolyVector> cands;
  for (const auto& g : proj.full_generators()) {
    PolyVector v;
    for (std::size_t j = 0; j < p; ++j) v.push_back(compose(g[j], at_zero));
    if (!is_zero(v)) cands.push_back(std::move(v));
  }
  ModuleSpan out(B, p);
  out.trunc_degree = D;
  out.add(minimize_generators(B, p, std::move(cands)));
  return out;
}

/// Dimension of the span of the values at 0 of the generators.
inline std::size_t analytic_stratum_dim(const MapGerm& F, const ModuleSpan& L) {
  auto gens = L.full_generators();
  RationalMatrix M(gens.size(), F.p());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < F.p(); ++j) M(i, j) = gens[i][j].constant_term();
  return M.rank();
}

/// d psi(eta) o psi^{-1}; the inverse is a formal jet through D unless an
/// exact polynomial inverse is supplied.
inline VectorField transport(const VectorField& eta, const PolyVector& psi, int D,
                             const std::optional<PolyVector>& psi_inverse = std::nullopt) {
  const VarsPtr& V = eta.vars;
  if (psi.size() != V->size()) throw StructuralError("transport: diffeomorphism arity mismatch");
  for (const auto& c : psi)
    if (sgn(c.constant_term()) != 0) throw StructuralError("transport: diffeomorphism must fix the origin");
  if (linear_part(psi).determinant() == 0) throw StructuralError("transport: singular 1-jet");
  PolyVector pushed(V->size(), Polynomial(V));
  for (std::size_t j = 0; j < V->size(); ++j)
    for (std::size_t i = 0; i < V->size(); ++i)
      if (!eta.comps[i].is_zero()) pushed[j] += psi[j].derivative(i) * eta.comps[i];
  if (psi_inverse) return VectorField(V, compose(pushed, *psi_inverse));
  auto inv = formal_inverse_jet(psi, D);
  return VectorField(V, truncate_jet(compose(pushed, inv, D), D));
}

}  // namespace germlab
