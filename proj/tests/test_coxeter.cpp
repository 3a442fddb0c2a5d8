#include <gtest/gtest.h>

#include "hyperglue/coxeter.hpp"
#include "property_suite.hpp"

using namespace hyperglue;

namespace {

// Star with a center and three simply laced arms.
CoxeterDiagram star(int a, int b, int c) {
  CoxeterDiagram d(1 + a + b + c);
  int next = 1;
  for (int len : {a, b, c}) {
    int prev = 0;
    for (int i = 0; i < len; ++i, ++next) {
      d.set_label(prev, next, 3);
      prev = next;
    }
  }
  return d;
}

}  // namespace

TEST(SphericalOrder, Examples) {
  EXPECT_EQ(spherical_order(CoxeterDiagram(1)), 2);
  EXPECT_EQ(spherical_order(star(1, 2, 2)), 51840);
  EXPECT_EQ(spherical_type(star(1, 2, 2)), "E6");
  EXPECT_EQ(spherical_order(star(1, 2, 4)), Integer(696729600));
  EXPECT_FALSE(spherical_order(star(1, 2, 5)).has_value());  // affine E8
  EXPECT_EQ(spherical_order(star(1, 1, 2)), 1920);            // D5
}

TEST(SphericalOrder, BruteForceFixtures) {
  EXPECT_EQ(testkit::enumerate_coxeter_group(star(1, 1, 1), 100000), 192u);
  CoxeterDiagram h3(3);
  h3.set_label(0, 1, 5);
  h3.set_label(1, 2, 3);
  EXPECT_EQ(testkit::enumerate_coxeter_group(h3, 100000), 120u);
  EXPECT_EQ(spherical_order(h3), 120);
}

TEST(EulerCharacteristic, Examples) {
  EXPECT_EQ(euler_characteristic(CoxeterDiagram(0)), 1);
  EXPECT_EQ(euler_characteristic(CoxeterDiagram(1)), Rational(1, 2));
  EXPECT_EQ(euler_characteristic(simplex_roots(6).diagram()), Rational(-1, 414720));
  EXPECT_EQ(Integer(414720), Integer(1024) * 81 * 5);
}

TEST(SimplexRoots, SixDimensionalRealization) {
  const auto s = simplex_roots(6);
  ASSERT_EQ(s.roots.size(), 7u);
  EXPECT_EQ(s.roots[0], (LorentzVector{1, 0, 0, 0, 0, 0, 0}));
  for (int i = 2; i <= 6; ++i) EXPECT_EQ(s.roots[i - 1], LorentzVector::unit(7, i - 1) - LorentzVector::unit(7, i - 2));
  const LorentzVector& a7 = s.roots[6];
  EXPECT_EQ(a7, (LorentzVector{0, 0, 0, -1, -1, -1, 1}));
  EXPECT_EQ(lorentz_product(a7, a7), 2);
  for (int i = 0; i < 6; ++i) EXPECT_EQ(lorentz_product(a7, s.roots[i]), i == 3 ? -1 : 0) << i;
  EXPECT_EQ(s.diagram().label(s.v_index, s.e_index), 4);
  EXPECT_EQ(spherical_order(s.vertex_stabilizer()), 51840);
  EXPECT_EQ(spherical_order(s.edge_stabilizer()), 1920);
}

TEST(SimplexRoots, StabilizerTypes) {
  const char* vertex[] = {"A4", "D5", "E6", "E7", "E8"};
  for (int n = 4; n <= 8; ++n) EXPECT_EQ(spherical_type(simplex_roots(n).vertex_stabilizer()), vertex[n - 4]) << n;
  EXPECT_THROW(simplex_roots(3), std::invalid_argument);
}

TEST(VectorOrbit, Examples) {
  const auto s = simplex_roots(6);
  const LorentzVector e1 = LorentzVector::unit(7, 0);
  EXPECT_EQ(vector_orbit(e1, s.vertex_roots()).size(), 27u);
  EXPECT_EQ(vector_orbit(e1, {}), std::vector<LorentzVector>{e1});
  const std::vector<LorentzVector> a2{s.roots[1]};
  const auto o = vector_orbit(e1, a2);
  ASSERT_EQ(o.size(), 2u);
  EXPECT_NE(std::find(o.begin(), o.end(), LorentzVector::unit(7, 1)), o.end());
}

TEST(DiagramText, Parse) {
  const auto d = CoxeterDiagram::parse("3\n1 2 5\n2 3 inf\n");
  EXPECT_EQ(d.rank(), 3);
  EXPECT_EQ(d.label(0, 1), 5);
  EXPECT_EQ(d.label(1, 2), CoxeterDiagram::infinity);
  EXPECT_EQ(d.label(0, 2), 2);
  EXPECT_THROW(CoxeterDiagram::parse("2\n1 2 1\n"), std::invalid_argument);
}

TEST(CoxeterProperties, SphericalOrderAgainstEnumeration) {
  const auto r = testkit::spherical_order_by_enumeration(21, 1000);
  EXPECT_TRUE(r.ok()) << r.first_failure;
}

TEST(CoxeterProperties, OrbitSizes) {
  const auto r = testkit::orbit_side_counts();
  EXPECT_TRUE(r.ok()) << r.first_failure;
}
