#pragma once

#include <vector>

#include "germlab/localalg.hpp"
#include "germlab/verdict.hpp"

namespace germlab {

inline PolyVector gradient(const Polynomial& g) {
  PolyVector d;
  for (std::size_t i = 0; i < g.nvars(); ++i) d.push_back(g.derivative(i));
  return d;
}

inline void require_vanishing(const Polynomial& g) {
  if (sgn(g.constant_term()) != 0) throw StructuralError("function must vanish at the origin");
}

/// dim O_n / Jg
inline CodimResult milnor_number(const Polynomial& g, int D = 12) {
  require_vanishing(g);
  return finite_codim_certified(ideal_span(g.vars(), gradient(g)), D);
}

/// dim O_n / (Jg + <g>)
inline CodimResult tjurina_number(const Polynomial& g, int D = 12) {
  require_vanishing(g);
  auto gens = gradient(g);
  gens.push_back(g);
  return finite_codim_certified(ideal_span(g.vars(), gens), D);
}

inline Json to_json(const CodimResult& r) {
  if (auto* c = std::get_if<CodimCertificate>(&r)) {
    Json j{{"finite", true}, {"value", c->codim}, {"nakayama_level", c->N}};
    if (c->heuristic) j["heuristic"] = true;
    return j;
  }
  return Json{{"finite", false}, {"checked_through", std::get<NotFiniteUpTo>(r).D}};
}

namespace detail {

inline const CodimCertificate* certified(const CodimResult& r) {
  auto* c = std::get_if<CodimCertificate>(&r);
  return c && !c->heuristic ? c : nullptr;
}

}  // namespace detail

/// Does g lie in its jacobian ideal (in the local ring)?
///  YES: u g = sum a_i dg/dx_i with u(0) = 1, all polynomial; or a truncated
///       identity together with m^{N+1} contained in Jg.
///  NO:  the truncated system is inconsistent (a certificate row is recorded).
/// When mu and tau are both finite they are computed and compared as a check.
inline Verdict saito_check(const Polynomial& g, int D = 12) {
  require_vanishing(g);
  Verdict v;
  v.decision = "saito";
  v.degree = D;
  const VarsPtr& V = g.vars();
  std::size_t n = V->size();
  auto grad = gradient(g);

  auto mu = milnor_number(g, D);
  auto tau = tjurina_number(g, D);
  v.step("milnor", to_json(mu));
  v.step("tjurina", to_json(tau));
  auto* cm = detail::certified(mu);
  auto* ct = detail::certified(tau);
  int bound = D;
  if (cm) bound = std::min(D, cm->N + 1);

  // u = 1 + sum x_k v_k, so  sum_k (x_k g) v_k - sum_i a_i g_i = -g
  LinearRelation rel;
  rel.vars = V;
  rel.equations.emplace_back();
  std::vector<std::size_t> a(n), w(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = rel.add_unknown(bound);
    if (!grad[i].is_zero()) rel.equations[0].push_back({a[i], -grad[i]});
  }
  for (std::size_t k = 0; k < n; ++k) {
    w[k] = rel.add_unknown(bound - 1);
    rel.equations[0].push_back({w[k], g.multiply_monomial(Monomial::unit(n, k))});
  }
  rel.rhs.push_back(-g);
  auto sol = solve_relation(rel, false);
  if (sol.consistent) {
    Polynomial u = Polynomial::constant(V, 1);
    PolyVector mult;
    for (std::size_t k = 0; k < n; ++k) u += sol.particular[w[k]].multiply_monomial(Monomial::unit(n, k));
    for (std::size_t i = 0; i < n; ++i) mult.push_back(sol.particular[a[i]]);
    v.status = Status::Yes;
    v.witness = Json{{"kind", "exact"}, {"unit", to_string(u)}, {"multipliers", to_json(mult)}};
    v.step("exact witness u*g = sum a_i dg/dx_i");
  } else {
    auto r = membership_witness({g}, ideal_span(V, grad), D);
    if (auto* nw = std::get_if<NotInSpanAt>(&r)) {
      v.status = Status::No;
      Json cert = Json::array();
      for (std::size_t k = 0; k < nw->certificate.size(); ++k)
        cert.push_back(Json{nw->certificate.cols[k], to_string(nw->certificate.vals[k])});
      v.certificate = Json{{"kind", "truncated system inconsistent"}, {"jet_level", nw->N}, {"row", cert}};
      v.step("g is not in Jg modulo degree > " + std::to_string(nw->N));
    } else if (cm) {
      auto& mw = std::get<MembershipWitness>(r);
      PolyVector mult;
      for (const auto& m : mw.multipliers[0]) mult.push_back(m);
      v.status = Status::Yes;
      v.witness = Json{{"kind", "truncated"}, {"jet_level", D}, {"multipliers", to_json(mult)},
                       {"jacobian_contains_power_of_maximal_ideal", cm->N}};
      v.step("truncated witness, Jg contains m^" + std::to_string(cm->N));
    } else {
      v.status = Status::UnknownAtDegree;
      v.note = "g lies in Jg modulo degree > " + std::to_string(D) + " but no exact witness was found";
    }
  }
  if (cm && ct) {
    bool eq = cm->codim == ct->codim;
    v.step("mu = tau cross-check", Json{{"mu", cm->codim}, {"tau", ct->codim}, {"agrees", eq == v.yes()}});
    if (v.status != Status::UnknownAtDegree && eq != v.yes())
      throw std::logic_error("saito_check: membership verdict contradicts mu = tau");
  }
  return v;
}

}  // namespace germlab
