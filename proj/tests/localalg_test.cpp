#include <gtest/gtest.h>

#include "germlab/exactalg.hpp"
#include "germlab/localalg.hpp"
#include "oracles.hpp"

using namespace germlab;

namespace {

VarsPtr V(std::vector<std::string> n) { return make_vars(std::move(n)); }
Polynomial P(const std::string& s, const VarsPtr& v) { return parse_polynomial(s, v); }

ModuleSpan jacobian_ideal(const Polynomial& g) {
  PolyVector gens;
  for (std::size_t i = 0; i < g.nvars(); ++i) gens.push_back(g.derivative(i));
  return ideal_span(g.vars(), gens);
}

int codim_of(const ModuleSpan& M, int D = 12) {
  auto r = finite_codim_certified(M, D);
  auto* c = std::get_if<CodimCertificate>(&r);
  return c ? c->codim : -1;
}

}  // namespace

TEST(FiniteCodim, MilnorNumbers) {
  auto v = V({"x", "y"});
  EXPECT_EQ(codim_of(jacobian_ideal(P("x^3 + y^5", v))), 8);
  auto x = V({"x"});
  for (int k = 2; k <= 8; ++k)
    EXPECT_EQ(codim_of(jacobian_ideal(P("x^" + std::to_string(k + 1), x))), k) << k;
}

TEST(FiniteCodim, AgreesWithDenseOracle) {
  auto v = V({"x", "y"});
  for (std::string s : {"x^4 + y^5 + x^2*y^2", "x^3 + x*y^4", "x^2*y + y^4", "x^5 + y^5 + x^2*y^2"}) {
    Polynomial g = P(s, v);
    std::vector<PolyVector> gens{{g.derivative(0)}, {g.derivative(1)}};
    auto r = finite_codim_certified(ideal_span(v, {g.derivative(0), g.derivative(1)}), 12);
    auto& c = std::get<CodimCertificate>(r);
    EXPECT_EQ(static_cast<std::size_t>(c.codim), oracle::quotient_dim(gens, 2, c.N + 3)) << s;
    EXPECT_EQ(c.cobasis.size(), static_cast<std::size_t>(c.codim));
  }
}

TEST(FiniteCodim, NonIsolatedIsNotFinite) {
  auto v = V({"x", "y", "z"});
  Polynomial g = P("x*y^3*z^3 + y^5 + z^5", v);
  auto r = finite_codim_certified(jacobian_ideal(g), 10);
  ASSERT_TRUE(std::holds_alternative<NotFiniteUpTo>(r));
  EXPECT_EQ(std::get<NotFiniteUpTo>(r).D, 10);
}

TEST(FiniteCodim, CertificateLevelIsNakayama) {
  auto v = V({"x", "y"});
  // m^5 lies in <x^2, y^4>
  auto r = finite_codim_certified(ideal_span(v, {P("3x^2", v), P("5y^4", v)}), 12);
  auto& c = std::get<CodimCertificate>(r);
  EXPECT_EQ(c.N, 5);
  EXPECT_EQ(c.codim, 8);
}

TEST(Membership, ExactWitness) {
  auto x = V({"x"});
  Polynomial g = P("x^2", x);
  auto r = membership_witness({P("x^2", x)}, jacobian_ideal(g), 3);
  auto& w = std::get<MembershipWitness>(r);
  EXPECT_TRUE(w.exact);
  EXPECT_EQ(w.multipliers[0][0], P("1/2*x", x));
}

TEST(Membership, NotInSpanWithCertificate) {
  auto v = V({"x", "y"});
  Polynomial g = P("x^5 + y^5 + x^2*y^2", v);
  auto r = membership_witness({g}, jacobian_ideal(g), 6);
  ASSERT_TRUE(std::holds_alternative<NotInSpanAt>(r));
  EXPECT_FALSE(std::get<NotInSpanAt>(r).certificate.empty());
}

TEST(Membership, TruncatedWitnessReverifies) {
  auto v = V({"x", "y"});
  // (1+x) * x is in <x> but use a unit multiple of a generator that is not polynomial-exact
  ModuleSpan M = ideal_span(v, {P("x + x^2", v)});
  auto r = membership_witness({P("x", v)}, M, 5);
  auto& w = std::get<MembershipWitness>(r);
  EXPECT_FALSE(w.exact);
  PolyVector back = combine(M, w.multipliers, 5);
  EXPECT_EQ(back[0], P("x", v));
}

TEST(Syzygy, KoszulRelation) {
  auto v = V({"x", "y"});
  LinearRelation rel;
  rel.vars = v;
  auto a = rel.add_unknown(3), b = rel.add_unknown(3);
  rel.equations.push_back({{a, P("x", v)}, {b, P("y", v)}});
  ModuleSpan S = syzygy_solve(rel);
  ASSERT_EQ(S.num_generators(), 1u);
  const auto& g = S.parts[0].generators[0];
  EXPECT_EQ(g[0] * P("x", v) + g[1] * P("y", v), Polynomial(v));
  EXPECT_EQ(degree_of(g), 1);
}

TEST(Syzygy, AuxiliaryUnknownsAreProjectedAway) {
  // eta * d/dX (X^2) = a * X^2 : Derlog of X^2 is generated by X d/dX
  auto v = V({"X"});
  LinearRelation rel;
  rel.vars = v;
  auto eta = rel.add_unknown(4);
  auto a = rel.add_unknown(3, false);
  rel.equations.push_back({{eta, P("2X", v)}, {a, P("-X^2", v)}});
  ModuleSpan S = syzygy_solve(rel);
  ASSERT_EQ(S.num_generators(), 1u);
  EXPECT_EQ(S.rank, 1u);
  const auto& g = S.parts[0].generators[0];
  EXPECT_EQ(g[0].degree(), 1);
  EXPECT_EQ(g[0].order(), 1);
}

TEST(JetSpan, ViaMapCodimOfCusp) {
  // T A_e for f = (x^2, x^3): codim 1 with cobasis x e2
  auto x = V({"x"});
  auto XY = V({"X", "Y"});
  PolyVector f{P("x^2", x), P("x^3", x)};
  ModuleSpan T(x, 2);
  T.add({{f[0].derivative(0), f[1].derivative(0)}});
  T.add({{P("1", x), P("0", x)}, {P("0", x), P("1", x)}}, MultiplierRing::via(f, XY));
  auto r = finite_codim_certified(T, 12);
  auto& c = std::get<CodimCertificate>(r);
  EXPECT_EQ(c.codim, 1);
  ASSERT_EQ(c.cobasis.size(), 1u);
  EXPECT_EQ(c.cobasis[0].component, 1u);
  EXPECT_EQ(c.cobasis[0].monomial, Monomial({1}));
}
