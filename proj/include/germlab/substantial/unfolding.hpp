#pragma once

#include <optional>
#include <string>
#include <vector>

#include "germlab/substantial/lambda_jets.hpp"

namespace germlab {

/// F(x, l) = Psi(K(x, l + g(x))) with Psi(X, M) = (X, M - g(X)), for a
/// one-parameter unfolding whose parameter enters a single component as l*c
/// and g depends only on coordinates that F passes through unchanged.
struct ShearPresentation {
  MapGerm model;     // K
  Polynomial shift;  // g over the target ring
  PolyVector psi, psi_inverse;
};

inline std::optional<ShearPresentation> shear_presentation(const Unfolding& U) {
  if (U.m() != 1) return std::nullopt;
  const MapGerm& F = U.total();
  std::size_t n = F.n(), p = F.p(), il = n - 1;
  auto split = split_passthrough(F);
  std::optional<std::size_t> j0;
  std::optional<Monomial> c;
  for (std::size_t j = 0; j + 1 < p; ++j)
    for (const auto& [m, a] : F[j].terms()) {
      if (m[il] == 0) continue;
      Monomial rest = m;
      rest.set(il, 0);
      if (m[il] != 1 || a != 1 || (j0 && *j0 != j) || (c && *c != rest)) return std::nullopt;
      j0 = j;
      c = rest;
    }
  if (!j0) return std::nullopt;
  // g collects the terms (passthrough monomial) * c of the parameter-free part
  Polynomial g_src(F.source());
  for (const auto& [m, a] : F[*j0].terms()) {
    if (m[il] != 0 || !c->divides(m) || m == *c) continue;
    Monomial q = c->cofactor_in(m);
    bool pass = true;
    for (std::size_t i = 0; i < n; ++i)
      if (q[i] > 0 && (split.comp_of[i] < 0 || i == il)) pass = false;
    if (pass) g_src.add_term(q, a);
  }
  if (g_src.is_zero()) return std::nullopt;
  const VarsPtr& T = F.target();
  PolyVector to_target;
  for (std::size_t i = 0; i < n; ++i)
    to_target.push_back(split.comp_of[i] >= 0 ? Polynomial::variable(T, static_cast<std::size_t>(split.comp_of[i]))
                                              : Polynomial(T));
  ShearPresentation S;
  S.shift = compose(g_src, to_target);
  PolyVector kc = F.components();
  kc[*j0] -= g_src * Polynomial::term(F.source(), *c, Rational(1));
  S.model = MapGerm(F.source(), T, kc);
  S.psi = identity_map(T);
  S.psi_inverse = identity_map(T);
  S.psi[p - 1] -= S.shift;
  S.psi_inverse[p - 1] += S.shift;
  // F = Psi o K o Phi with Phi(x, l) = (x, l + g)
  PolyVector phi = identity_map(F.source());
  phi[il] += g_src;
  PolyVector rebuilt = compose(S.psi, compose(S.model.components(), phi));
  for (std::size_t j = 0; j < p; ++j)
    if (!(rebuilt[j] - F[j]).is_zero()) return std::nullopt;
  return S;
}

struct UnfoldingAnalysis {
  LiftModule lift;
  /// "derlog" or "shear" (lift module transported from the sheared model).
  std::string lift_route = "derlog";
  std::optional<ShearPresentation> shear;
  ModuleSpan projectable;
  LambdaJetSpace L;
  int degree = 0;
  /// Degree bound of the syzygies defining the projectable module.
  int projectable_degree = 0;
};

/// Lift(F) transported from its sheared model when one exists.
inline LiftModule unfolding_lift(const Unfolding& U, int D, const LiftOptions& opt, std::string* route = nullptr,
                                 std::optional<ShearPresentation>* shear = nullptr) {
  auto S = shear_presentation(U);
  if (!S) {
    if (route) *route = "derlog";
    return lift_module(U.total(), D, opt);
  }
  auto to_F = [&](const LiftModule& K) {
    LiftModule out = K;
    out.disc.H = normalize_content(compose(K.disc.H, S->psi_inverse));
    std::vector<PolyVector> gens;
    for (const auto& g : K.generators())
      gens.push_back(transport(VectorField(U.total().target(), g), S->psi, D, S->psi_inverse).comps);
    out.span = ModuleSpan(U.total().target(), U.total().p());
    out.span.trunc_degree = K.span.trunc_degree;
    out.span.add(std::move(gens));
    return out;
  };
  LiftOptions kopt = opt;
  if (opt.enough) kopt.enough = [&](const LiftModule& K) { return opt.enough(to_F(K)); };
  LiftModule out = to_F(lift_module(S->model, D, kopt));
  if (route) *route = "shear";
  if (shear) *shear = S;
  return out;
}

/// How far the lift module is computed: through D, or until the named
/// property has a witness (YES verdicts do not need the whole module).
enum class LiftGoal { Complete, Substantial, WeaklySubstantial };

inline bool goal_met(const LambdaJetSpace& L, LiftGoal goal) {
  if (goal == LiftGoal::Complete) return false;
  return (goal == LiftGoal::Substantial ? decide_substantial(L) : decide_weak_substantial(L)).yes();
}

/// Early-stop test for a lift computation aimed at goal.
inline std::function<bool(const LiftModule&)> goal_callback(std::size_t m, int D, LiftGoal goal) {
  if (goal == LiftGoal::Complete) return {};
  return [m, D, goal](const LiftModule& M) {
    return goal_met(lambda_jet_space(projectable_filter(M.span, m, D), m), goal);
  };
}

/// Projectable module and lambda-jets of a.lift, for m parameters.
inline void finish_analysis(UnfoldingAnalysis& a, std::size_t m, int D, LiftGoal goal) {
  a.degree = D;
  a.projectable_degree = D;
  a.projectable = projectable_filter(a.lift.span, m, D);
  a.L = lambda_jet_space(a.projectable, m);
  if (goal == LiftGoal::Complete) return;
  // the syzygies behind a witness can have larger degree than the lift
  // generators; raise their bound up to 2D before answering NO
  while (!goal_met(a.L, goal) && a.projectable_degree + 2 <= 2 * D) {
    a.projectable_degree += 2;
    a.projectable = projectable_filter(a.lift.span, m, a.projectable_degree);
    a.L = lambda_jet_space(a.projectable, m);
  }
}

inline UnfoldingAnalysis analyze_unfolding(const Unfolding& U, int D, const LiftOptions& opt = {},
                                           LiftGoal goal = LiftGoal::Complete) {
  UnfoldingAnalysis a;
  LiftOptions o = opt;
  if (goal != LiftGoal::Complete) o.enough = goal_callback(U.m(), D, goal);
  a.lift = unfolding_lift(U, D, o, &a.lift_route, &a.shear);
  finish_analysis(a, U.m(), D, goal);
  return a;
}

/// sum c_i g_{index_i}
inline PolyVector combination_field(const UnfoldingAnalysis& a, const std::vector<Rational>& c) {
  auto gens = a.projectable.full_generators();
  const VarsPtr& T = a.projectable.vars;
  PolyVector eta(a.projectable.rank, Polynomial(T));
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < eta.size(); ++j) eta[j] += gens[a.L.generator_index[i]][j] * c[i];
  return eta;
}

/// Parameter components of eta have the literal shape Lambda_k * c_k + (terms
/// in m_Lambda * m) with c_k nonzero constants.
inline bool literal_substantial_shape(const PolyVector& eta, std::size_t p, std::size_t m) {
  std::size_t s = p + m;
  for (std::size_t k = 0; k < m; ++k) {
    for (const auto& [mono, c] : eta[p + k].terms()) {
      int lam = 0;
      for (std::size_t t = 0; t < m; ++t) lam += mono[p + t];
      if (lam == 0) return false;
      if (mono.degree() == 1 && mono != Monomial::unit(s, p + k)) return false;
    }
    if (sgn(eta[p + k].coefficient(Monomial::unit(s, p + k))) == 0) return false;
  }
  return true;
}

/// decide_substantial / decide_weak_substantial with the witness field and
/// its lower partner attached.
inline Verdict unfolding_verdict(const Unfolding& U, const UnfoldingAnalysis& a, bool weak) {
  Verdict v = weak ? decide_weak_substantial(a.L) : decide_substantial(a.L);
  v.degree = a.degree;
  v.step("lift module", Json{{"route", a.lift_route}, {"generators", a.lift.generators().size()},
                             {"degree_reached", a.lift.degree}, {"stopped_at_witness", a.lift.stopped_early},
                             {"free_basis", a.lift.free_basis}, {"discriminant", to_string(a.lift.disc.H)}});
  v.step("projectable module",
         Json{{"generators", a.projectable.num_generators()}, {"syzygy_degree", a.projectable_degree}});
  v.step("lambda jets", a.L.to_json());
  if (v.status == Status::No) {
    v.note = "no field among combinations of the lift module generators through degree " + std::to_string(a.degree) +
             " (syzygy degree " + std::to_string(a.projectable_degree) + ")";
    return v;
  }
  if (!v.yes() || U.m() == 0) return v;
  std::vector<Rational> c;
  for (const auto& x : v.witness["combination"]) c.push_back(parse_rational(x.get<std::string>()));
  PolyVector eta = combination_field(a, c);
  const MapGerm& F = U.total();
  v.witness["field"] = to_json(VectorField(F.target(), eta));
  if (!weak && !literal_substantial_shape(eta, U.base_p(), U.m()))
    throw std::logic_error("substantial witness does not have the required parameter shape");
  auto low = lower_partner(F, VectorField(F.target(), eta), a.degree);
  if (auto* pr = std::get_if<LiftPair>(&low)) {
    v.witness["lower_partner"] = to_json(pr->xi);
    v.witness["lower_partner_exact"] = pr->exact;
  }
  return v;
}

}  // namespace germlab
