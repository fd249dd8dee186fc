#include <gtest/gtest.h>

#include "germlab/germ/map_germ.hpp"
#include "oracles.hpp"

using namespace germlab;

namespace {

MapGerm G(std::vector<std::string> s, std::vector<std::string> t, std::vector<std::string> c) {
  return MapGerm::parse(std::move(s), std::move(t), c);
}

int codim(const CodimResult& r) {
  auto* c = std::get_if<CodimCertificate>(&r);
  return c ? c->codim : -1;
}

MapGerm cusp() { return G({"x"}, {"X1", "X2"}, {"x^2", "x^3"}); }
MapGerm h2() { return G({"x", "y"}, {"X1", "X2", "X3"}, {"x", "y^3", "y^5 + x*y"}); }

}  // namespace

TEST(MapGerm, Validation) {
  EXPECT_THROW(G({"x"}, {"X"}, {"x + 1"}), StructuralError);
  EXPECT_THROW(G({"x"}, {"x"}, {"x"}), StructuralError);
  EXPECT_THROW(G({"x"}, {"X", "Y"}, {"x"}), StructuralError);
  try {
    G({"x"}, {"X"}, {"x^2 + 3"});
  } catch (const StructuralError& e) {
    EXPECT_STREQ(e.what(), "germ must fix origin");
  }
}

TEST(MapGerm, Corank) {
  EXPECT_EQ(corank(cusp()), 1u);
  EXPECT_EQ(corank(G({"x", "y"}, {"X", "Y"}, {"x", "y"})), 0u);
  MapGerm ex39 = G({"x", "y", "u1", "u2", "u3"}, {"A", "B", "U1", "U2", "U3"},
                   {"x^3 + y^3 + u1*x + u2*y - (u3 + u3^2)*x^2 + u3*y^2", "x*y", "u1", "u2", "u3"});
  EXPECT_EQ(corank(ex39), 2u);
}

TEST(MapGerm, Multiplicity) {
  EXPECT_EQ(codim(multiplicity(G({"x", "y"}, {"X", "Y"}, {"x", "y^3 + x^2*y"}))), 3);
  EXPECT_EQ(codim(multiplicity(G({"x", "y"}, {"X", "Y"}, {"x", "y"}))), 1);
  EXPECT_EQ(codim(multiplicity(G({"x", "y", "z"}, {"X", "Y", "Z"}, {"x", "y", "z^3 + (x^2 + y^3)*z"}))), 3);
}

TEST(MapGerm, KeCodimAgreesWithOracle) {
  EXPECT_EQ(codim(ke_codim(G({"x"}, {"X"}, {"x^3"}))), 2);
  EXPECT_EQ(codim(ke_codim(G({"x", "y"}, {"X", "Y"}, {"x", "y"}))), 0);
  MapGerm f = h2();
  ModuleSpan T = tke_span(f);
  auto r = ke_codim(f);
  auto& c = std::get<CodimCertificate>(r);
  EXPECT_EQ(static_cast<std::size_t>(c.codim), oracle::quotient_dim(T.full_generators(), 2, c.N + 3));
  EXPECT_EQ(c.codim, 5);
}

TEST(MapGerm, AeCodim) {
  EXPECT_EQ(codim(ae_codim(G({"x"}, {"X"}, {"x"}))), 0);
  EXPECT_EQ(codim(ae_codim(cusp())), 1);
  EXPECT_EQ(codim(ae_codim(G({"x", "l"}, {"X1", "X2", "L"}, {"x^2", "x^3 + l*x", "l"}))), 0);
  // lips (x, y^3 + x^2 y) has A_e-codimension 1
  EXPECT_EQ(codim(ae_codim(G({"x", "y"}, {"X", "Y"}, {"x", "y^3 + x^2*y"}))), 1);
}

TEST(MapGerm, MinimalUnfoldingData) {
  auto r = minimal_unfolding_data(h2());
  auto& b = std::get<std::vector<QuotientBasisElement>>(r);
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b[0].component, 1u);
  EXPECT_EQ(b[0].monomial, Monomial({0, 1}));
  EXPECT_EQ(b[1].component, 2u);
  EXPECT_EQ(b[1].monomial, Monomial({0, 2}));

  auto c = std::get<std::vector<QuotientBasisElement>>(minimal_unfolding_data(cusp()));
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].component, 1u);
  EXPECT_EQ(c[0].monomial, Monomial({1}));

  auto a = std::get<std::vector<QuotientBasisElement>>(minimal_unfolding_data(G({"x"}, {"X"}, {"x^3"})));
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0].monomial, Monomial({1}));

  EXPECT_TRUE(std::get<std::vector<QuotientBasisElement>>(minimal_unfolding_data(G({"x"}, {"X"}, {"x"}))).empty());
}

TEST(MapGerm, StandardUnfolding) {
  auto c = std::get<std::vector<QuotientBasisElement>>(minimal_unfolding_data(cusp()));
  Unfolding F = build_standard_unfolding(cusp(), c);
  EXPECT_EQ(to_string(F.total()), "(x^2, x^3 + x*l1, l1)");
  EXPECT_EQ(F.base().components(), cusp().components());
  auto b = std::get<std::vector<QuotientBasisElement>>(minimal_unfolding_data(h2()));
  Unfolding H = build_standard_unfolding(h2(), b);
  EXPECT_EQ(to_string(H.total()), "(x, y^3 + y*l1, y^5 + y^2*l2 + x*y, l1, l2)");
  Unfolding E = build_standard_unfolding(h2(), {});
  EXPECT_EQ(E.total().components(), h2().components());
}

TEST(MapGerm, StandardUnfoldingIsStable) {
  for (const MapGerm& f : {cusp(), h2(), G({"x"}, {"X"}, {"x^4"}), G({"x", "y"}, {"X", "Y"}, {"x", "y^3 + x^2*y"}),
                           G({"x", "y"}, {"X", "Y"}, {"x", "x*y + y^4 + y^5"})}) {
    auto b = std::get<std::vector<QuotientBasisElement>>(minimal_unfolding_data(f));
    Unfolding F = build_standard_unfolding(f, b);
    EXPECT_EQ(is_stable(F.total()).status, Status::Yes) << to_string(f);
    EXPECT_EQ(is_stable(f).status, Status::No) << to_string(f);
  }
  EXPECT_EQ(is_stable(G({"x"}, {"X"}, {"x"})).status, Status::Yes);
}
