#include <gtest/gtest.h>

#include "corpus.hpp"
#include "germlab/homogeneity.hpp"
#include "oracles.hpp"

using namespace germlab;

namespace {

MapGerm G(std::vector<std::string> s, std::vector<std::string> t, std::vector<std::string> c) {
  return MapGerm::parse(std::move(s), std::move(t), c);
}

const CodimCertificate* finite(const CodimResult& r) {
  auto* c = std::get_if<CodimCertificate>(&r);
  return c && !c->heuristic ? c : nullptr;
}

}  // namespace

TEST(WeightDetection, KnownGerms) {
  auto cusp = wh_detect(G({"x"}, {"X1", "X2"}, {"x^2", "x^3"}));
  ASSERT_TRUE(cusp);
  EXPECT_EQ(*cusp, (WeightSystem{{1}, {2, 3}}));
  auto h2 = wh_detect(G({"x", "y"}, {"X1", "X2", "X3"}, {"x", "y^3", "y^5 + x*y"}));
  ASSERT_TRUE(h2);
  EXPECT_EQ(*h2, (WeightSystem{{4, 1}, {4, 3, 5}}));
  EXPECT_FALSE(wh_detect(G({"x"}, {"X"}, {"x + x^2"})));
}

TEST(WeightDetection, MinimalSumInWiderCone) {
  // (x, y) has a two-dimensional cone; the smallest normalized point is (1,1;1,1)
  EXPECT_EQ(*wh_detect(G({"x", "y"}, {"X", "Y"}, {"x", "y"})), (WeightSystem{{1, 1}, {1, 1}}));
  // y^3 + x^2 y admits only w_x = w_y
  EXPECT_EQ(*wh_detect(G({"x", "y"}, {"X", "Y"}, {"x", "y^3 + x^2*y"})), (WeightSystem{{1, 1}, {1, 3}}));
}

TEST(WeightDetection, RoundTripWithEulerPair) {
  std::vector<MapGerm> germs{G({"x"}, {"X1", "X2"}, {"x^2", "x^3"}),
                             G({"x", "y"}, {"X1", "X2", "X3"}, {"x", "y^3", "y^5 + x*y"}),
                             G({"x", "y"}, {"X", "Y"}, {"x", "y^4 + x*y"}),
                             G({"x", "l"}, {"X1", "X2", "L"}, {"x^2", "x^3 + l*x", "l"})};
  for (const auto& f : germs) {
    auto W = wh_detect(f);
    ASSERT_TRUE(W);
    auto e = euler_pair(f, *W);
    EXPECT_TRUE(f_related(f, e.eta, e.xi));
  }
  auto cusp = G({"x"}, {"X1", "X2"}, {"x^2", "x^3"});
  auto e = euler_pair(cusp, *wh_detect(cusp));
  EXPECT_EQ(e.eta, VectorField::parse(cusp.target(), {"2*X1", "3*X2"}));
  EXPECT_EQ(e.xi, VectorField::parse(cusp.source(), {"x"}));
  EXPECT_THROW(euler_pair(cusp, WeightSystem{{1}, {2, 4}}), InconsistencyError);
  auto id = G({"x"}, {"X"}, {"x"});
  auto ie = euler_pair(id, WeightSystem{{1}, {1}});
  EXPECT_EQ(ie.eta, VectorField::parse(id.target(), {"X"}));
}

TEST(GoodWeights, H2AndCusp) {
  auto h2 = G({"x", "y"}, {"X1", "X2", "X3"}, {"x", "y^3", "y^5 + x*y"});
  auto basis = std::get<std::vector<QuotientBasisElement>>(minimal_unfolding_data(h2));
  auto v = good_weights_check(h2, *wh_detect(h2), basis);
  EXPECT_EQ(v.status, Status::Yes);
  EXPECT_EQ(v.witness[0]["unfolding_degree"], 1);
  EXPECT_EQ(v.witness[0]["component_degree"], 3);
  EXPECT_EQ(v.witness[1]["unfolding_degree"], 2);
  EXPECT_EQ(v.witness[1]["component_degree"], 5);
  auto cusp = G({"x"}, {"X1", "X2"}, {"x^2", "x^3"});
  auto cb = std::get<std::vector<QuotientBasisElement>>(minimal_unfolding_data(cusp));
  auto cv = good_weights_check(cusp, *wh_detect(cusp), cb);
  EXPECT_EQ(cv.status, Status::Yes);
  EXPECT_EQ(cv.witness[0]["unfolding_degree"], 1);
  EXPECT_EQ(good_weights_check(cusp, *wh_detect(cusp), {}).status, Status::Yes);
}

TEST(MilnorTjurina, SmallCases) {
  auto v = make_vars({"x", "y"});
  EXPECT_EQ(finite(milnor_number(parse_polynomial("x^3", make_vars({"x"}))))->codim, 2);
  EXPECT_EQ(finite(milnor_number(parse_polynomial("x^3 + y^5", v)))->codim, 8);
  EXPECT_EQ(finite(tjurina_number(parse_polynomial("x^3 + y^5", v)))->codim, 8);
  auto g = parse_polynomial("x*y^3*z^3 + y^5 + z^5", make_vars({"x", "y", "z"}));
  EXPECT_FALSE(finite(milnor_number(g, 10)));
  EXPECT_THROW(milnor_number(parse_polynomial("x + 1", v)), StructuralError);
}

TEST(Saito, CorpusAgreesWithMilnorTjurina) {
  auto cases = corpus::saito_functions();
  ASSERT_GE(cases.size(), 20u);
  int compared = 0;
  for (const auto& c : cases) {
    auto V = make_vars(c.vars);
    auto g = parse_polynomial(c.g, V);
    auto mu = milnor_number(g), tau = tjurina_number(g);
    auto v = saito_check(g);
    EXPECT_NE(v.status, Status::UnknownAtDegree) << c.g;
    auto* m = finite(mu);
    auto* t = finite(tau);
    if (m) {
      PolyVector grad = gradient(g);
      std::vector<std::vector<Polynomial>> gens;
      for (const auto& d : grad) gens.push_back({d});
      EXPECT_EQ(static_cast<std::size_t>(m->codim), oracle::quotient_dim(gens, V->size(), m->N + 3)) << c.g;
    }
    if (m && t) {
      ++compared;
      EXPECT_GE(m->codim, t->codim) << c.g;
      EXPECT_EQ(v.yes(), m->codim == t->codim) << c.g;
    }
  }
  EXPECT_GE(compared, 20);
}

TEST(Saito, Witnesses) {
  auto x = make_vars({"x"});
  auto v = saito_check(parse_polynomial("x^2", x));
  ASSERT_EQ(v.status, Status::Yes);
  EXPECT_EQ(v.witness["multipliers"][0], "1/2*x");
  // mixed weights (-1,1,1) give an exact identity although the singularity is not isolated
  auto V = make_vars({"x", "y", "z"});
  auto g = parse_polynomial("x*y^3*z^3 + y^5 + z^5", V);
  auto s = saito_check(g, 8);
  ASSERT_EQ(s.status, Status::Yes);
  EXPECT_EQ(s.witness["kind"], "exact");
  Polynomial euler = parse_polynomial("-x", V) * g.derivative(0) + parse_polynomial("y", V) * g.derivative(1) +
                     parse_polynomial("z", V) * g.derivative(2);
  EXPECT_EQ(euler, g * Rational(5));
  // replay the reported witness
  Polynomial u = parse_polynomial(s.witness["unit"].get<std::string>(), V);
  Polynomial rhs(V);
  for (std::size_t i = 0; i < 3; ++i) rhs += parse_polynomial(s.witness["multipliers"][i].get<std::string>(), V) * g.derivative(i);
  EXPECT_EQ(u * g, rhs);
  EXPECT_NE(u.constant_term(), 0);
}

TEST(Saito, NonQuasiHomogeneousHasCertificate) {
  auto V = make_vars({"x", "y"});
  auto v = saito_check(parse_polynomial("x^5 + x^2*y^2 + y^5", V));
  EXPECT_EQ(v.status, Status::No);
  EXPECT_FALSE(v.certificate.is_null());
}

TEST(PoincareDulac, OneDimensional) {
  auto V = make_vars({"X"});
  auto r = pd_normalize(VectorField::parse(V, {"X + X^2"}), 4);
  EXPECT_EQ(r.normal, VectorField::parse(V, {"X"}));
  EXPECT_EQ(to_string(r.to_normal[0]), "-X^4 + X^3 - X^2 + X");
  EXPECT_TRUE(r.poincare_domain);
}

TEST(PoincareDulac, DiagonalAndRemovable) {
  auto V = make_vars({"X", "Y"});
  auto lin = VectorField::parse(V, {"2*X", "Y"});
  auto r = pd_normalize(lin, 5);
  EXPECT_EQ(r.normal, lin);
  EXPECT_EQ(r.from_normal, identity_map(V));
  auto s = pd_normalize(VectorField::parse(V, {"2*X", "Y + X*Y"}), 5);
  EXPECT_EQ(s.normal, lin);
  // Y^2 in the X component is resonant (2*1 = 2) and must stay
  auto t = pd_normalize(VectorField::parse(V, {"2*X + Y^2", "Y"}), 5);
  EXPECT_EQ(t.normal, VectorField::parse(V, {"2*X + Y^2", "Y"}));
  EXPECT_THROW(pd_normalize(VectorField::parse(V, {"Y", "0"}), 3), UnsupportedShape);
  EXPECT_THROW(pd_normalize(VectorField::parse(V, {"Y", "2*X"}), 3), UnsupportedShape);
}

TEST(PoincareDulac, ResonantOnlyAndConjugatesBack) {
  auto V = make_vars({"X", "Y", "Z"});
  std::vector<std::vector<std::string>> fields{
      {"X + Y^2 + X*Z", "2*Y + X^2 + Z^3", "3*Z + X*Y + X^3"},
      {"X + Y + Z^2", "2*Y + X^2", "4*Z + X*Y*Z + Y^2"},
      {"2*X + Y^2 - Z^2", "Y + X*Y", "Z + X^2 + Y*Z"},
  };
  const int D = 5;
  for (const auto& f : fields) {
    auto vf = VectorField::parse(V, f);
    auto r = pd_normalize(vf, D);
    for (std::size_t j = 0; j < 3; ++j)
      for (const auto& [m, c] : r.normal.comps[j].terms())
        if (m.degree() >= 2) {
          EXPECT_TRUE(resonant(m, j, r.spectrum)) << f[j];
        }
    auto back = transport(r.normal, r.from_normal, D);
    EXPECT_EQ(back, vf);
  }
}
