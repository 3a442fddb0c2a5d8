#include <gtest/gtest.h>

#include <random>
#include <set>

#include "hyperglue/glued_complex.hpp"
#include "hyperglue/symmetry.hpp"
#include "reference.hpp"

using namespace hyperglue;
using testkit::reference_rows;

namespace {

const SymmetryAction& action6() {
  static const SymmetryAction a = SymmetryAction::decompose(polytope(6), builtin_sigma(6));
  return a;
}

}  // namespace

TEST(BuiltinSigma, Shape) {
  const LorentzMatrix& s6 = builtin_sigma(6);
  const LorentzMatrix& s5 = builtin_sigma(5);
  EXPECT_TRUE(is_lorentzian_integral(s6));
  EXPECT_TRUE(is_lorentzian_integral(s5));
  EXPECT_EQ(s6.block(1, 6), s5);
  for (std::size_t j = 0; j < 7; ++j) EXPECT_EQ(s6(0, j), j == 0 ? 1 : 0);
  for (std::size_t i = 0; i < 7; ++i) EXPECT_EQ(s6(i, 0), i == 0 ? 1 : 0);
  EXPECT_THROW(builtin_sigma(4), std::invalid_argument);
}

TEST(Decompose, SigmaIsFoldWordTimesSymmetryOfP) {
  const SymmetryAction& a = action6();
  const Polytope& P = polytope(6);
  LorentzMatrix gamma = LorentzMatrix::identity(7);
  for (int w : a.fold_word()) gamma = gamma * LorentzMatrix::reflection(P.normal(w));
  EXPECT_EQ(gamma * a.stabilizer_part(), builtin_sigma(6));
  std::set<int> images;
  for (int w = 0; w < static_cast<int>(P.wall_count()); ++w) {
    EXPECT_EQ(a.stabilizer_part() * P.normal(w), P.normal(a.wall_image(w)));
    images.insert(a.wall_image(w));
  }
  EXPECT_EQ(images.size(), P.wall_count());
  for (int f = 0; f < static_cast<int>(P.faces().size()); ++f) {
    EXPECT_EQ(P.face(a.face_image(f)).dim, P.face(f).dim);
    EXPECT_TRUE(a.face_sign(f) == 1 || a.face_sign(f) == -1);
  }
}

TEST(Equivariance, ReferenceCodesByBothRoutes) {
  for (const auto& row : reference_rows) {
    const auto sys = SidePairingSystem::expand(PairingCode(6, row.code));
    EXPECT_TRUE(induced_tile_map(sys, action6()).has_value()) << row.code;
    EXPECT_TRUE(check_equivariance(sys, builtin_sigma(6))) << row.code;
    EXPECT_TRUE(check_equivariance(sys, LorentzMatrix::identity(7))) << row.code;
  }
}

// Relabelled coordinates keep properness but generally break equivariance;
// the algebraic test and the membership test must give the same answer.
TEST(Equivariance, RoutesAgreeOnPermutedSystems) {
  std::mt19937_64 rng(51);
  int broken = 0;
  for (int i = 0; i < 40; ++i) {
    const auto& row = reference_rows[i % reference_rows.size()];
    const auto b = testkit::permute_assignment(decode(PairingCode(6, row.code)), testkit::random_permutation(rng, 6));
    ASSERT_TRUE(b.has_value());
    const auto sys = SidePairingSystem::expand(*b);
    ASSERT_TRUE(check_proper(sys).manifold());
    const bool algebraic = induced_tile_map(sys, action6()).has_value();
    EXPECT_EQ(algebraic, check_equivariance(sys, builtin_sigma(6))) << encode(*b).str();
    broken += !algebraic;
  }
  EXPECT_GT(broken, 0);
}

TEST(InducedAction, OrderEightFreeAndInGluingGroup) {
  for (const auto& row : reference_rows) {
    const auto sys = SidePairingSystem::expand(PairingCode(6, row.code));
    EXPECT_EQ(induced_order(sys, builtin_sigma(6)), 8u) << row.code;
    EXPECT_TRUE(membership(builtin_sigma(6).power(8), sys).member) << row.code;
    EXPECT_FALSE(membership(builtin_sigma(6), sys).member) << row.code;
    EXPECT_TRUE(check_free(sys, action6())) << row.code;
  }
}

TEST(InducedAction, TileMapMatchesFolding) {
  for (const auto& row : reference_rows) {
    const auto sys = SidePairingSystem::expand(PairingCode(6, row.code));
    const auto tm = induced_tile_map(sys, action6());
    ASSERT_TRUE(tm.has_value());
    for (KMask x = 0; x < 64; ++x) EXPECT_EQ(tm->apply(x), tile_image_by_folding(sys, builtin_sigma(6), x));
    EXPECT_TRUE(tm->power(8).is_identity());
    for (unsigned j = 1; j < 8; ++j)
      for (KMask x = 0; x < 64; ++x) EXPECT_NE(tm->power(j).apply(x), x) << "tile fixed by power " << j;
    EXPECT_EQ(tm->compose(*tm), tm->power(2));
  }
}

TEST(Orientability, Examples) {
  for (const auto& row : reference_rows) {
    const auto sys = SidePairingSystem::expand(PairingCode(6, row.code));
    EXPECT_FALSE(orientable(sys)) << row.code;
    EXPECT_FALSE(orientable(sys, &builtin_sigma(6))) << row.code;
  }
  // Every k of odd weight makes every side map orientation preserving.
  const auto odd = SidePairingSystem::expand(Assignment{6, std::vector<KMask>(21, 1)});
  for (const SideMap& s : odd.sides()) EXPECT_EQ(s.map.determinant(), 1);
  EXPECT_TRUE(orientable(odd));
}

TEST(Cusps, FiveInEachQuotient) {
  for (const auto& row : reference_rows) {
    const auto sys = SidePairingSystem::expand(PairingCode(6, row.code));
    const std::size_t quotient = cusp_count(sys, &action6());
    const std::size_t cover = cusp_count(sys);
    EXPECT_EQ(quotient, 5u) << row.code;
    EXPECT_EQ(cover, cusp_classes(sys).size());
    EXPECT_GE(cover, quotient);
    EXPECT_LE(cover, 8 * quotient);
  }
}
