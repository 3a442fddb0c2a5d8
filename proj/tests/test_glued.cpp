#include <gtest/gtest.h>

#include <map>

#include "hyperglue/homology.hpp"
#include "reference.hpp"

using namespace hyperglue;
using testkit::reference_rows;

namespace {

const SymmetryAction& action6() {
  static const SymmetryAction a = SymmetryAction::decompose(polytope(6), builtin_sigma(6));
  return a;
}

long alternating(const std::vector<std::size_t>& counts) {
  long chi = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) chi += (k % 2 ? -1L : 1L) * static_cast<long>(counts[k]);
  return chi;
}

// Every interior codimension-one cell is shared by exactly two tile facets
// and every top cell of a cusp link lies in a single tile.
void expect_codim_one_manifold_like(const GluedComplex& gc) {
  const int n = gc.dimension();
  std::size_t model_facets = 0, model_links = 0, facets = 0, links = 0;
  for (const auto& cell : gc.model().cells) {
    if (cell.at_infinity) continue;
    if (cell.dim == n - 1) ++(cell.cusp >= 0 ? model_links : model_facets);
  }
  for (const auto& cell : gc.cells()) {
    if (cell.at_infinity || cell.dim != n - 1) continue;
    ++(cell.on_boundary ? links : facets);
  }
  const auto tiles = static_cast<std::size_t>(gc.tile_count());
  EXPECT_EQ(2 * facets, tiles * model_facets);
  EXPECT_EQ(links, tiles * model_links);
}

}  // namespace

TEST(TileCellModel, BoundaryOfBoundaryVanishes) {
  for (bool truncated : {false, true}) {
    const auto m = TileCellModel::build(polytope(6), truncated);
    for (const auto& cell : m.cells) {
      std::map<int, int> dd;
      for (const auto& [g, s] : cell.boundary)
        for (const auto& [h, t] : m.cells[g].boundary) dd[h] += s * t;
      for (const auto& [h, c] : dd) EXPECT_EQ(c, 0);
    }
  }
}

TEST(GluedComplex, QuotientHasEightTilesAndChiMinusOne) {
  for (const auto& row : reference_rows) {
    const auto sys = SidePairingSystem::expand(PairingCode(6, row.code));
    const GluedComplex q = build_quotient(sys, &action6());
    EXPECT_EQ(q.tile_count(), 8) << row.code;
    EXPECT_TRUE(q.quotient());
    EXPECT_EQ(q.euler_characteristic(), -1) << row.code;
    EXPECT_EQ(alternating(q.cell_counts()), -1);
    EXPECT_GT(q.cells_at_infinity(), 0u);

    const GluedComplex t = truncate(q);
    EXPECT_TRUE(t.truncated());
    EXPECT_EQ(t.cell_counts(), (std::vector<std::size_t>{225, 1242, 2700, 2880, 1512, 324, 8})) << row.code;
    EXPECT_EQ(alternating(t.cell_counts()), -1);
    EXPECT_EQ(boundary_components(t), 5u);
    EXPECT_EQ(t.cells_at_infinity(), 0u);
    expect_codim_one_manifold_like(t);
  }
}

TEST(GluedComplex, CoverHasSixtyFourTilesAndChiMinusEight) {
  const auto sys = SidePairingSystem::expand(PairingCode(6, reference_rows[0].code));
  const GluedComplex m = build_quotient(sys);
  EXPECT_EQ(m.tile_count(), 64);
  EXPECT_FALSE(m.quotient());
  EXPECT_EQ(m.euler_characteristic(), -8);
  const GluedComplex t = truncate(m);
  EXPECT_EQ(alternating(t.cell_counts()), -8);
  EXPECT_EQ(boundary_components(t), cusp_count(sys));
  const ChainComplex cc = chain_complex(t);
  EXPECT_EQ(cc.euler_characteristic(), -8);
  expect_codim_one_manifold_like(t);
}

TEST(GluedComplex, ChainComplexShapes) {
  const auto sys = SidePairingSystem::expand(PairingCode(6, reference_rows[1].code));
  const ChainComplex cc = chain_complex(build_glued(sys, &action6(), true));
  ASSERT_EQ(cc.top_dimension(), 6);
  EXPECT_EQ(cc.boundary(0).rows(), 0u);
  for (int k = 0; k <= 6; ++k) {
    EXPECT_EQ(cc.boundary(k).cols(), cc.count(k));
    if (k > 0) {
      EXPECT_EQ(cc.boundary(k).rows(), cc.count(k - 1));
      if (k > 1) EXPECT_TRUE((cc.boundary(k - 1) * cc.boundary(k)).is_zero()) << k;
    }
  }
  EXPECT_EQ(cc.euler_characteristic(), -1);
}

TEST(GluedComplex, RejectsImproperOrNonEquivariantInput) {
  const auto zeros = SidePairingSystem::expand(PairingCode(6, std::string(21, '0')));
  EXPECT_ANY_THROW(build_glued(zeros, &action6(), true));
}
