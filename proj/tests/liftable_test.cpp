#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "germlab/liftable.hpp"
#include "oracles.hpp"

using namespace germlab;

namespace {

MapGerm G(std::vector<std::string> s, std::vector<std::string> t, std::vector<std::string> c) {
  return MapGerm::parse(std::move(s), std::move(t), c);
}

MapGerm fold_family() { return G({"y", "l"}, {"Y", "L"}, {"y^3 + l*y", "l"}); }
MapGerm cusp_opsu() { return G({"x", "l"}, {"X1", "X2", "L"}, {"x^2", "x^3 + l*x", "l"}); }

Unfolding an_unfolding(int n) {
  MapGerm f = G({"x"}, {"X"}, {"x^" + std::to_string(n + 1)});
  auto data = std::get<std::vector<QuotientBasisElement>>(minimal_unfolding_data(f));
  return build_standard_unfolding(f, data);
}

bool is_exact_member(const PolyVector& v, const ModuleSpan& M, int N) {
  auto r = membership_witness(v, M, N);
  auto* w = std::get_if<MembershipWitness>(&r);
  return w && w->exact;
}

ModuleSpan span_of(const VarsPtr& v, const std::vector<std::vector<std::string>>& fields) {
  ModuleSpan M(v, v->size());
  std::vector<PolyVector> gens;
  for (const auto& f : fields) gens.push_back(VectorField::parse(v, f).comps);
  M.add(gens);
  return M;
}

std::vector<Rational> spectrum(const RationalMatrix& m) {
  auto s = char_poly_spectrum(m);
  EXPECT_TRUE(s.all_rational);
  return s.eigenvalues();
}

Rational scale_of(const std::vector<Rational>& ev, const std::vector<int>& w) {
  Rational a(0), b(0);
  for (const auto& e : ev) a += e;
  for (int x : w) b += x;
  return a / b;
}

std::vector<Rational> scaled(Rational c, std::vector<int> w) {
  std::vector<Rational> r;
  for (int x : w) r.push_back(c * x);
  std::sort(r.begin(), r.end());
  return r;
}

}  // namespace

TEST(Discriminant, FoldFamilyAgreesWithSylvester) {
  auto d = discriminant_equation(fold_family());
  EXPECT_EQ(d.shape, "monogenic");
  auto R = make_vars({"Y", "L", "y"});
  auto g = parse_polynomial("y^3 + L*y - Y", R);
  auto ref = normalize_content(oracle::sylvester_laplace(g, g.derivative(2), 2)).remap(d.H.vars());
  EXPECT_EQ(d.H, ref);
  EXPECT_EQ(to_string(d.H), "4*L^3 + 27*Y^2");
}

TEST(Discriminant, CuspCurveAgreesWithSylvester) {
  auto d = discriminant_equation(G({"t"}, {"X1", "X2"}, {"t^2", "t^3"}));
  EXPECT_EQ(d.shape, "plane-curve");
  auto R = make_vars({"X1", "X2", "t"});
  auto ref = oracle::sylvester_laplace(parse_polynomial("X1 - t^2", R), parse_polynomial("X2 - t^3", R), 2);
  EXPECT_EQ(d.H, normalize_content(ref).remap(d.H.vars()));
  EXPECT_EQ(d.H, parse_polynomial("X1^3 - X2^2", d.H.vars()));
}

TEST(Discriminant, SmoothAndUnsupported) {
  auto d = discriminant_equation(G({"y"}, {"Y"}, {"y"}));
  EXPECT_TRUE(d.smooth);
  EXPECT_TRUE(d.H.is_constant());
  auto ex39 = G({"x", "y", "u1", "u2", "u3"}, {"A", "B", "U1", "U2", "U3"},
                {"x^3 + y^3 + u1*x + u2*y - (u3 + u3^2)*x^2 + u3*y^2", "x*y", "u1", "u2", "u3"});
  EXPECT_THROW(discriminant_equation(ex39), UnsupportedShape);
}

TEST(Discriminant, SquarefreeReduction) {
  // y^4 folds the line twice onto itself: discriminant is Y = 0 with multiplicity
  auto d = discriminant_equation(G({"y"}, {"Y"}, {"y^4"}));
  EXPECT_EQ(to_string(d.H), "Y");
  EXPECT_TRUE(d.reduced);
}

TEST(Lift, FoldFamilyMatchesKnownGenerators) {
  auto F = fold_family();
  auto L = lift_module(F, 6);
  EXPECT_TRUE(L.free_basis);
  auto known = span_of(F.target(), {{"3*Y", "2*L"}, {"-2/3*L^2", "3*Y"}});
  for (const auto& g : L.generators()) EXPECT_TRUE(is_exact_member(g, known, 8));
  for (const auto& g : known.full_generators()) EXPECT_TRUE(is_exact_member(g, L.span, 8));
}

TEST(Lift, GeneratorsAnnihilateDiscriminantModuloH) {
  for (auto F : {fold_family(), cusp_opsu(), an_unfolding(3).total()}) {
    auto L = lift_module(F, 6);
    auto H = L.disc.H;
    for (const auto& g : L.generators()) {
      auto q = divide_exact(VectorField(F.target(), g).apply(H), H);
      EXPECT_TRUE(q.has_value());
    }
  }
}

TEST(Lift, SmoothGermLiftsEverything) {
  auto F = G({"y"}, {"Y"}, {"y"});
  auto L = lift_module(F, 3);
  EXPECT_TRUE(L.free_basis);
  EXPECT_EQ(analytic_stratum_dim(F, L.span), 1u);
}

TEST(Lift, RefusesNonFiniteGerm) {
  // fold in y times a non-finite curve: not A-finite
  auto F = G({"y"}, {"X1", "X2"}, {"y^2", "y^4"});
  EXPECT_THROW(lift_module(F, 4), HypothesisError);
}

TEST(Lift, AnMinimalUnfoldingSpectra) {
  for (int n = 2; n <= 5; ++n) {
    auto U = an_unfolding(n);
    const auto& F = U.total();
    auto L = lift_module(F, n + 2);
    EXPECT_TRUE(L.free_basis) << n;
    EXPECT_EQ(analytic_stratum_dim(F, L.span), 0u);
    std::vector<int> tw, sw{1};
    for (int k = n + 1; k >= 2; --k) tw.push_back(k);
    for (int k = n; k >= 2; --k) sw.push_back(k);
    std::mt19937 rng(n);
    auto gens = L.generators();
    RationalMatrix comb(F.p(), F.p());
    PolyVector combo(F.p(), Polynomial(F.target()));
    for (const auto& g : gens) {
      VectorField eta(F.target(), g);
      auto j1 = one_jet(eta);
      // triangular 1-jet: each generator is a multiple of the Euler spectrum
      auto ev = spectrum(j1);
      Rational c = scale_of(ev, tw);
      EXPECT_EQ(ev, scaled(c, tw));
      Rational r(static_cast<int>(rng() % 7) - 3);
      for (std::size_t j = 0; j < F.p(); ++j) combo[j] += g[j] * r;
      auto low = lower_partner(F, eta, n + 2);
      auto* pr = std::get_if<LiftPair>(&low);
      ASSERT_NE(pr, nullptr);
      EXPECT_TRUE(pr->exact);
      EXPECT_EQ(spectrum(one_jet(pr->xi)), scaled(c, sw));
    }
    VectorField mix(F.target(), combo);
    auto ev = spectrum(one_jet(mix));
    EXPECT_EQ(ev, scaled(scale_of(ev, tw), tw));
  }
}

TEST(Lift, PrismContainsConstantFields) {
  auto F = G({"x1", "y", "l"}, {"X1", "Y", "L"}, {"x1", "y^3 + l*y", "l"});
  auto L = lift_module(F, 4);
  auto e1 = VectorField::parse(F.target(), {"1", "0", "0"}).comps;
  EXPECT_TRUE(is_exact_member(e1, L.span, 4));
  EXPECT_GE(analytic_stratum_dim(F, L.span), 1u);
}

TEST(LowerPartner, CuspOpsuEuler) {
  auto F = cusp_opsu();
  auto eta = VectorField::parse(F.target(), {"2*X1", "3*X2", "2*L"});
  auto r = lower_partner(F, eta, 4);
  auto* p = std::get_if<LiftPair>(&r);
  ASSERT_NE(p, nullptr);
  EXPECT_TRUE(p->exact);
  EXPECT_EQ(p->xi, VectorField::parse(F.source(), {"x", "2*l"}));
}

TEST(LowerPartner, IdentityGermReturnsSameField) {
  auto F = G({"x", "y"}, {"X", "Y"}, {"x", "y"});
  auto eta = VectorField::parse(F.target(), {"X^2 + 1", "X*Y"});
  auto p = std::get<LiftPair>(lower_partner(F, eta, 3));
  EXPECT_TRUE(p.exact);
  EXPECT_EQ(p.xi, VectorField::parse(F.source(), {"x^2 + 1", "x*y"}));
}

TEST(LowerPartner, NonLiftableReportsLevel) {
  auto F = G({"t"}, {"X1", "X2"}, {"t^2", "t^3"});
  auto eta = VectorField::parse(F.target(), {"1", "0"});
  auto r = lower_partner(F, eta, 4);
  ASSERT_TRUE(std::holds_alternative<NotLiftableAt>(r));
  EXPECT_EQ(std::get<NotLiftableAt>(r).failing_level, 0);
}

TEST(LowerPartner, EveryLiftGeneratorLowersExactly) {
  for (auto F : {fold_family(), cusp_opsu()}) {
    auto L = lift_module(F, 6);
    for (const auto& g : L.generators()) {
      VectorField eta(F.target(), g);
      auto p = std::get<LiftPair>(lower_partner(F, eta, 6));
      EXPECT_TRUE(p.exact);
      EXPECT_TRUE(f_related(F, p.eta, p.xi));
    }
  }
}

TEST(Projectable, FoldFamily) {
  auto F = fold_family();
  auto L = lift_module(F, 6);
  auto P = projectable_filter(L.span, 1, 6);
  auto T = F.target();
  EXPECT_TRUE(is_exact_member(VectorField::parse(T, {"3*Y", "2*L"}).comps, P, 6));
  EXPECT_TRUE(is_exact_member(VectorField::parse(T, {"-2/3*L^3", "3*Y*L"}).comps, P, 6));
  EXPECT_FALSE(is_exact_member(VectorField::parse(T, {"-2/3*L^2", "3*Y"}).comps, P, 6));
  for (const auto& g : P.full_generators()) {
    for (const auto& [m, c] : g[1].terms()) EXPECT_GT(m[1], 0);
  }
}

TEST(Projectable, PrismFieldsSurvive) {
  auto F = G({"x1", "y", "l"}, {"X1", "Y", "L"}, {"x1", "y^3 + l*y", "l"});
  auto L = lift_module(F, 4);
  auto P = projectable_filter(L.span, 1, 4);
  EXPECT_TRUE(is_exact_member(VectorField::parse(F.target(), {"1", "0", "0"}).comps, P, 4));
}

TEST(Restrict, CuspOpsuGivesBaseEuler) {
  Unfolding U(cusp_opsu(), 1);
  auto L = lift_module(U.total(), 6);
  auto R = restrict_lift_to_base(U, L.span, 6);
  auto B = U.base().target();
  EXPECT_TRUE(is_exact_member(VectorField::parse(B, {"2*X1", "3*X2"}).comps, R, 6));
  // the base is a plane cusp; its lift module is Derlog of X1^3 - X2^2
  auto direct = derlog(discriminant_equation(U.base()).H, 6);
  for (const auto& g : direct.generators()) EXPECT_TRUE(is_exact_member(g, R, 6));
  for (const auto& g : R.full_generators()) EXPECT_TRUE(is_exact_member(g, direct.span, 6));
}

TEST(Restrict, FoldFamilyOverCubic) {
  Unfolding U(fold_family(), 1);
  auto L = lift_module(U.total(), 6);
  auto R = restrict_lift_to_base(U, L.span, 6);
  auto B = U.base().target();
  // Derlog(Y) on the line
  EXPECT_TRUE(is_exact_member(VectorField::parse(B, {"Y"}).comps, R, 6));
  EXPECT_FALSE(is_exact_member(VectorField::parse(B, {"1"}).comps, R, 6));
}

TEST(Restrict, NoParametersIsIdentity) {
  auto F = fold_family();
  Unfolding U(F, 0);
  auto L = lift_module(F, 6);
  auto R = restrict_lift_to_base(U, L.span, 6);
  for (const auto& g : L.generators()) EXPECT_TRUE(is_exact_member(g, R, 6));
  for (const auto& g : R.full_generators()) EXPECT_TRUE(is_exact_member(g, L.span, 6));
}

TEST(OneJet, Examples) {
  auto T = make_vars({"X1", "X2", "L"});
  auto j = one_jet(VectorField::parse(T, {"2*X1", "3*X2", "2*L"}));
  EXPECT_TRUE(j.is_diagonal());
  EXPECT_EQ(j(1, 1), 3);
  auto YL = make_vars({"Y", "L"});
  auto n = one_jet(VectorField::parse(YL, {"-2/3*L^2", "3*Y"}));
  EXPECT_EQ(n, (RationalMatrix{{0, 0}, {3, 0}}));
  EXPECT_TRUE(one_jet(VectorField::zero(YL)).is_zero());
  EXPECT_THROW(one_jet(VectorField::parse(YL, {"1", "0"})), StructuralError);
}

TEST(Transport, ShearOfPrismGenerators) {
  auto T = make_vars({"X1", "X2", "Y", "L"});
  auto q = parse_polynomial("X1^2 + X1*X2^3", T);
  auto I = identity_map(T);
  PolyVector psi = I, psi_inv = I;
  psi[3] = I[3] - q;
  psi_inv[3] = I[3] + q;
  auto d1 = transport(VectorField::parse(T, {"1", "0", "0", "0"}), psi, 8, psi_inv);
  EXPECT_EQ(d1.comps[3], -q.derivative(0));
  EXPECT_EQ(d1.comps[0], Polynomial::constant(T, 1));
  auto e = transport(VectorField::parse(T, {"0", "0", "3*Y", "2*L"}), psi, 8, psi_inv);
  EXPECT_EQ(e.comps[3], parse_polynomial("2*L", T) + q * Rational(2));
  // formal inverse agrees through the degree
  auto f = transport(VectorField::parse(T, {"0", "0", "3*Y", "2*L"}), psi, 8);
  EXPECT_EQ(f, e);
}

TEST(Transport, IdentityAndLinearConjugation) {
  auto T = make_vars({"Y", "L"});
  auto eta = VectorField::parse(T, {"3*Y - 2/3*L^2", "2*L + Y"});
  EXPECT_EQ(transport(eta, identity_map(T), 5), eta);
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    RationalMatrix A(2, 2);
    do {
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t k = 0; k < 2; ++k) A(i, k) = Rational(static_cast<int>(rng() % 9) - 4);
    } while (A.determinant() == 0);
    auto t = transport(eta, apply_linear(A, identity_map(T)), 5);
    EXPECT_EQ(char_poly_spectrum(one_jet(t)).char_poly, char_poly_spectrum(one_jet(eta)).char_poly);
  }
}

TEST(Transport, Functorial) {
  auto T = make_vars({"X", "Y"});
  auto eta = VectorField::parse(T, {"2*X + Y^2", "3*Y + X*Y"});
  auto p1 = VectorField::parse(T, {"X + Y^2", "Y + X^3"}).comps;
  auto p2 = VectorField::parse(T, {"2*X - Y + X*Y", "X + Y"}).comps;
  const int D = 6;
  auto both = transport(eta, compose(p2, p1), D);
  auto step = transport(transport(eta, p1, D), p2, D);
  EXPECT_EQ(both, step);
}
