#pragma once

#include <string>
#include <vector>

#include "germlab/homogeneity.hpp"
#include "germlab/substantial/unfolding.hpp"

namespace germlab {

/// f = (x, y^3 + q(x) y) after the recorded coordinate changes.
struct Mult3Data {
  Polynomial q;         // over the ring of the passthrough variables x
  Rational scale;       // leading coefficient of the cubic, divided out in the target
  Polynomial shift;     // source change y -> y - shift(x)
  Polynomial constant;  // r(x), subtracted in the target after the shift
  std::size_t core_var = 0, core_comp = 0;
  std::vector<std::string> steps;
};

inline Mult3Data mult3_extract(const MapGerm& f) {
  if (f.n() != f.p()) throw UnsupportedShape("mult3_extract: source and target dimensions differ");
  auto split = split_passthrough(f);
  if (split.core_vars.size() != 1 || split.core_comps.size() != 1)
    throw UnsupportedShape("mult3_extract: germ is not presented as (x, h(x, y))");
  Mult3Data d;
  d.core_var = split.core_vars[0];
  d.core_comp = split.core_comps[0];
  const Polynomial& h = f[d.core_comp];
  std::size_t y = d.core_var;
  if (h.degree_in(y) != 3) throw UnsupportedShape("mult3_extract: component is not a cubic in the core variable");
  Polynomial a3 = coefficient_in(h, y, 3);
  if (!a3.is_constant()) throw UnsupportedShape("mult3_extract: leading coefficient in the core variable is not constant");
  d.scale = a3.constant_term();
  Rational inv = 1 / d.scale;
  Polynomial b2 = coefficient_in(h, y, 2) * inv, b1 = coefficient_in(h, y, 1) * inv, b0 = coefficient_in(h, y, 0) * inv;
  if (sgn(b2.constant_term()) != 0 || sgn(b1.constant_term()) != 0)
    throw UnsupportedShape("mult3_extract: multiplicity is below 3");
  // y -> y - b2/3 kills the quadratic term
  Polynomial q = b1 - b2 * b2 * Rational(1, 3);
  Polynomial r = b0 - b1 * b2 * Rational(1, 3) + b2 * b2 * b2 * Rational(2, 27);
  d.shift = b2 * Rational(1, 3);
  d.constant = r;
  std::vector<std::string> xn;
  for (std::size_t i = 0; i < f.n(); ++i)
    if (i != y) xn.push_back(f.source()->name(i));
  auto X = make_vars(xn);
  d.q = q.remap(X);
  if (d.scale != 1) d.steps.push_back("divide the core component by " + to_string(d.scale));
  if (!d.shift.is_zero()) d.steps.push_back("source: " + f.source()->name(y) + " -> " + f.source()->name(y) + " - (" + to_string(d.shift) + ")");
  if (!r.is_zero()) d.steps.push_back("target: subtract " + to_string(r));
  return d;
}

/// (x, y^3 + (q(x) + l) y, l) over f's names plus one parameter.
inline Unfolding mult3_opsu(const MapGerm& f, const Mult3Data& d) {
  auto sn = f.source()->names();
  auto tn = f.target()->names();
  sn.push_back(detail::fresh_name("l", 1, *f.source(), *f.target()));
  tn.push_back(detail::fresh_name("L", 1, *f.source(), *f.target()));
  auto S = make_vars(sn), T = make_vars(tn);
  std::size_t il = sn.size() - 1;
  PolyVector comps;
  for (std::size_t j = 0; j < f.p(); ++j) {
    if (j == d.core_comp) {
      Polynomial y = Polynomial::variable(S, d.core_var);
      comps.push_back(y * y * y + (d.q.remap(S) + Polynomial::variable(S, il)) * y);
    } else {
      comps.push_back(f[j].remap(S));
    }
  }
  comps.push_back(Polynomial::variable(S, il));
  return Unfolding(MapGerm(S, T, std::move(comps)), 1);
}

/// Quasi-homogeneity of a corank-1 multiplicity-3 germ (x, y^3 + q y):
/// decided by whether q lies in its jacobian ideal, cross-checked against
/// substantiality of the one-parameter stable unfolding.
inline Verdict decide_qh_mult3(const MapGerm& f, int D = 12) {
  Verdict v;
  v.decision = "quasi_homogeneous";
  v.degree = D;
  auto d = mult3_extract(f);
  v.step("normal form", Json{{"q", to_string(d.q)}, {"changes", d.steps}});
  if (d.q.is_zero()) {
    v.status = Status::Inapplicable;
    v.note = "q = 0: the germ is not A-finite";
    return v;
  }
  if (d.q.order() < 2) {
    v.status = Status::Inapplicable;
    v.note = "q has a linear part: the germ is stable";
    return v;
  }
  auto tau = tjurina_number(d.q, D);
  v.step("tjurina number of q", to_json(tau));
  if (!detail::certified(tau)) {
    v.status = Status::Inapplicable;
    v.note = "not A-finite: q has no isolated singularity, decision not applicable";
    return v;
  }
  auto s = saito_check(d.q, D);
  v.status = s.status;
  v.witness = s.witness;
  v.certificate = s.certificate;
  v.step("saito check of q", s.to_json());
  auto U = mult3_opsu(f, d);
  // stable once tau(q) is finite, so the finiteness check is skipped
  LiftOptions lo;
  lo.hypotheses_asserted = true;
  auto a = analyze_unfolding(U, D, lo, LiftGoal::Substantial);
  auto sub = unfolding_verdict(U, a, false);
  bool agree = sub.status == s.status;
  v.step("one-parameter stable unfolding is substantial",
         Json{{"unfolding", to_string(U.total())}, {"status", to_string(sub.status)}, {"agrees", agree}});
  if (!agree) v.note = "the two routes disagree";
  return v;
}

struct CoordinateConstruction {
  PdResult target, source;
  PolyVector normal_germ;  // to_normal_target o f o from_normal_source, through degree D
  bool weighted_homogeneous = false;
  bool linear_normal_forms = false;
};

inline Json to_json(const CoordinateConstruction& c) {
  return Json{{"target_weights", to_json(c.target.spectrum)},
              {"source_weights", to_json(c.source.spectrum)},
              {"target_change", to_json(c.target.to_normal)},
              {"source_change", to_json(c.source.to_normal)},
              {"germ_in_new_coordinates", to_json(c.normal_germ)},
              {"linear_normal_forms", c.linear_normal_forms},
              {"weighted_homogeneous_through_degree", c.weighted_homogeneous}};
}

/// New coordinates from a liftable field of f with positive spectrum.
inline CoordinateConstruction construct_coordinates(const MapGerm& f, VectorField eta0, int D) {
  auto ev = char_poly_spectrum(one_jet(eta0));
  if (ev.all_rational && !ev.rational_roots.empty() && sgn(ev.rational_roots.front().first) < 0)
    for (auto& c : eta0.comps) c = -c;
  CoordinateConstruction out;
  out.target = pd_normalize(eta0, D);
  auto low = lower_partner(f, eta0, D);
  auto* pr = std::get_if<LiftPair>(&low);
  if (!pr) throw UnsupportedShape("construct_coordinates: witness field has no lower partner");
  out.source = pd_normalize(pr->xi, D);
  out.normal_germ = truncate_jet(compose(out.target.to_normal, compose(f.components(), out.source.from_normal, D), D), D);
  auto linear = [](const VectorField& v) {
    for (const auto& c : v.comps)
      if (c.degree() > 1) return false;
    return true;
  };
  out.linear_normal_forms = linear(out.target.normal) && linear(out.source.normal);
  bool wh = true;
  for (std::size_t j = 0; j < out.normal_germ.size(); ++j)
    for (const auto& [m, c] : out.normal_germ[j].terms()) {
      Rational w(0);
      for (std::size_t i = 0; i < m.size(); ++i) w += Rational(m[i]) * out.source.spectrum[i];
      if (w != out.target.spectrum[j]) wh = false;
    }
  out.weighted_homogeneous = wh;
  return out;
}

/// Quasi-homogeneity of an equidimensional corank-1 A-finite germ with a
/// minimal stable unfolding, decided by substantiality of that unfolding.
inline Verdict decide_qh_minimal(const MapGerm& f, int D = 12, bool construct = false) {
  Verdict v;
  v.decision = "quasi_homogeneous";
  v.degree = D;
  if (f.n() != f.p()) throw UnsupportedShape("decide_qh_minimal: unsupported shape, needs n = p");
  if (corank(f) != 1) {
    v.status = Status::Inapplicable;
    v.note = "corank is not 1";
    return v;
  }
  auto ae = ae_codim(f, D);
  v.step("ae codimension", to_json(ae));
  if (!detail::certified(ae)) {
    v.status = Status::Inapplicable;
    v.note = "A-finiteness not certified through degree " + std::to_string(D);
    return v;
  }
  auto basis = std::get<std::vector<QuotientBasisElement>>(minimal_unfolding_data(f, D));
  auto U = build_standard_unfolding(f, basis);
  v.step("standard unfolding", Json{{"F", to_string(U.total())}, {"m", U.m()}});
  auto a = analyze_unfolding(U, D, {}, LiftGoal::Substantial);
  std::size_t strat = analytic_stratum_dim(U.total(), a.lift.span);
  v.step("analytic stratum", Json{{"dimension", strat}});
  if (strat != 0) {
    v.status = Status::Inapplicable;
    v.note = "the stable unfolding is not minimal";
    return v;
  }
  auto sub = unfolding_verdict(U, a, false);
  v.status = sub.status;
  v.witness = sub.witness;
  v.certificate = sub.certificate;
  for (auto& e : sub.evidence) v.evidence.push_back(e);
  v.note = sub.note;
  if (construct && v.yes() && U.m() > 0) {
    // restrict the witness to the base and normalize
    std::vector<Rational> c;
    for (const auto& x : sub.witness["combination"]) c.push_back(parse_rational(x.get<std::string>()));
    PolyVector eta = combination_field(a, c);
    auto B = f.target();
    PolyVector at_zero;
    for (std::size_t i = 0; i < U.total().p(); ++i)
      at_zero.push_back(i < f.p() ? Polynomial::variable(B, i) : Polynomial(B));
    PolyVector eta0;
    for (std::size_t j = 0; j < f.p(); ++j) eta0.push_back(compose(eta[j], at_zero));
    try {
      auto cc = construct_coordinates(f, VectorField(B, eta0), D);
      v.witness["coordinates"] = to_json(cc);
    } catch (const UnsupportedShape& e) {
      v.step("coordinate construction skipped", Json{{"reason", e.what()}});
    }
  }
  return v;
}

}  // namespace germlab
