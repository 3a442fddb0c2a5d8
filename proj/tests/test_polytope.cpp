#include <gtest/gtest.h>

#include <bit>
#include <map>

#include "hyperglue/polytope.hpp"
#include "property_suite.hpp"

using namespace hyperglue;

TEST(BuildP, SideCounts) {
  const std::size_t expected[] = {10, 16, 27, 56, 240};
  for (int n = 4; n <= 8; ++n) EXPECT_EQ(build_P(n).wall_count(), expected[n - 4]) << n;
}

TEST(BuildP, WallCensusInSixDimensions) {
  const Polytope& P = polytope(6);
  std::map<int, int> by_support;
  for (const auto& u : P.normals()) {
    int s = 0;
    for (int i = 0; i < 6; ++i) s += u[i] != 0;
    EXPECT_EQ(lorentz_product(u, u), 1);
    EXPECT_EQ(u.time() != 0, s != 1);
    ++by_support[s];
  }
  EXPECT_EQ(by_support, (std::map<int, int>{{1, 6}, {2, 15}, {5, 6}}));
  for (int i = 0; i < 6; ++i) EXPECT_EQ(P.normal(i), -LorentzVector::unit(7, i));
}

TEST(BuildP, RightAngles) {
  for (int n = 4; n <= 6; ++n) {
    const Polytope& P = polytope(n);
    for (int a = 0; a < static_cast<int>(P.wall_count()); ++a)
      for (int b = a + 1; b < static_cast<int>(P.wall_count()); ++b) {
        const Integer g = lorentz_product(P.normal(a), P.normal(b));
        if (P.neighbours(a) >> b & 1) EXPECT_EQ(g, 0) << n << " " << a << " " << b;
        else EXPECT_LE(g, -1) << "walls " << a << ", " << b << " neither meet nor diverge";
      }
  }
}

TEST(FaceLattice, TopFaceAndVertices) {
  const Polytope& P = polytope(6);
  const Face& top = P.face(P.top_face());
  EXPECT_EQ(top.dim, 6);
  EXPECT_EQ(top.support, 0u);
  EXPECT_EQ(P.faces_of_dimension(6).size(), 1u);
  for (int v : P.finite_vertices()) EXPECT_EQ(std::popcount(P.face(v).support), 6);
  for (int f = 0; f < static_cast<int>(P.faces().size()); ++f) EXPECT_EQ(P.find_face(P.face(f).support), f);
}

TEST(FaceLattice, BoundaryOfBoundaryVanishes) {
  for (int n = 4; n <= 6; ++n) {
    const Polytope& P = polytope(n);
    for (const Face& f : P.faces()) {
      std::map<int, int> dd;
      for (const auto& [g, s] : f.boundary)
        for (const auto& [h, t] : P.face(g).boundary) dd[h] += s * t;
      for (const auto& [h, c] : dd) EXPECT_EQ(c, 0) << "n " << n << " face " << f.support;
    }
  }
}

TEST(IdealVertices, NullPrimitiveAndOnTheirWalls) {
  const Polytope& P = polytope(6);
  const auto ideal = ideal_vertices(P);
  ASSERT_FALSE(ideal.empty());
  bool found = false;
  const LorentzVector cusp{0, 0, 0, 0, 0, 1, 1};
  for (const auto& v : ideal) {
    EXPECT_EQ(lorentz_product(v.point, v.point), 0);
    EXPECT_EQ(v.point.primitive(), v.point);
    for (int w = 0; w < static_cast<int>(P.wall_count()); ++w) {
      const Integer g = lorentz_product(v.point, P.normal(w));
      EXPECT_LE(g, 0);
      EXPECT_EQ(g == 0, (v.support >> w & 1) == 1);
    }
    found = found || v.point == cusp;
  }
  EXPECT_TRUE(found) << "e_6 + e_7 is not among the ideal vertices";
  EXPECT_EQ(ideal.size(), P.ideal_vertices().size());
}

TEST(FaceLattice, StableUnderRebuild) {
  const Polytope again = face_lattice(build_P(6));
  const Polytope& P = polytope(6);
  EXPECT_EQ(again.face_census(), P.face_census());
  EXPECT_EQ(again.ideal_vertices().size(), P.ideal_vertices().size());
  ASSERT_EQ(again.faces().size(), P.faces().size());
  for (std::size_t i = 0; i < P.faces().size(); ++i) EXPECT_EQ(again.faces()[i].support, P.faces()[i].support);
}

TEST(TileComplex, Blocks) {
  const TileComplex q6 = tile_complex(polytope(6));
  EXPECT_EQ(q6.tiles.size(), 64u);
  EXPECT_EQ(q6.sides.size(), 252u);
  EXPECT_EQ(q6.tile_face_count(), 64u * 21u);
  EXPECT_EQ(q6.internal_gluings.size(), 64u * 6u / 2u);
  for (const QSide& s : q6.sides) {
    int support = 0;
    for (int i = 0; i < 6; ++i) support += s.normal[i] != 0;
    EXPECT_EQ(s.tiles.size(), std::size_t{1} << (6 - support));
  }
  const TileComplex q5 = tile_complex(polytope(5));
  EXPECT_EQ(q5.tiles.size(), 32u);
  EXPECT_EQ(q5.sides.size(), 72u);
}

TEST(PolytopeProperties, SignOrbits) {
  const auto r = testkit::sign_orbits_of_sides();
  EXPECT_TRUE(r.ok()) << r.first_failure;
}

TEST(PolytopeProperties, InteriorWitness) {
  const auto r = testkit::interior_witness();
  EXPECT_TRUE(r.ok()) << r.first_failure;
  EXPECT_EQ(polytope(6).interior_point(), (LorentzVector{1, 2, 3, 4, 5, 6, 12}));
}
