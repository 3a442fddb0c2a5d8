#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "hyperglue/side_pairing.hpp"
#include "hyperglue/symmetry.hpp"

namespace hyperglue {

// Cell structure of one copy of P_n. Faces of P_n are cells; an ideal vertex
// is either a cell at infinity or, when truncated, is cut away: every face F
// through an ideal vertex v then contributes a boundary cell (v, F) of
// dimension dim F - 1, part of the link of v.
struct TileCellModel {
  struct Cell {
    int dim = 0;
    int face = 0;       // face of P_n containing the cell
    int cusp = -1;      // ideal vertex face id for cut cells
    bool at_infinity = false;
    std::vector<std::pair<int, int>> boundary;  // (cell, sign)
  };

  bool truncated = false;
  std::vector<Cell> cells;

  static TileCellModel build(const Polytope& p, bool truncated);
  std::optional<int> find(int face, int cusp = -1) const;

 private:
  std::vector<int> face_cell_;
  std::vector<std::vector<std::pair<int, int>>> cut_cell_;  // per face: (cusp, cell)
};

// M = 2^n tiles glued by the side-pairing, or M / <sigma>.
class GluedComplex {
 public:
  struct Cell {
    int dim = 0;
    KMask label = 0;      // tile label, reduced modulo the colours of the cell's walls
    int model_cell = 0;   // cell of TileCellModel
    bool at_infinity = false;
    bool on_boundary = false;  // lies in a truncation link
  };

  int dimension() const { return n_; }
  int tile_count() const { return tiles_; }
  bool truncated() const { return model_->truncated; }
  bool quotient() const { return action_.has_value(); }
  const std::vector<Cell>& cells() const { return cells_; }
  // Signed boundary of each cell as (cell, coefficient) pairs.
  const std::vector<std::vector<std::pair<int, long>>>& boundaries() const { return boundary_; }
  const TileCellModel& model() const { return *model_; }
  const SidePairingSystem& system() const { return *system_; }
  const SymmetryAction* action() const { return action_ ? &*action_ : nullptr; }

  std::vector<std::size_t> cell_counts() const;  // finite cells per dimension
  long euler_characteristic() const;             // of the open manifold
  std::size_t cells_at_infinity() const;

  friend GluedComplex build_glued(const SidePairingSystem& sys, const SymmetryAction* act, bool truncated);

 private:
  int n_ = 0;
  int tiles_ = 0;
  std::shared_ptr<const TileCellModel> model_;
  std::shared_ptr<const SidePairingSystem> system_;
  std::optional<SymmetryAction> action_;
  std::vector<Cell> cells_;
  std::vector<std::vector<std::pair<int, long>>> boundary_;
};

GluedComplex build_glued(const SidePairingSystem& sys, const SymmetryAction* act, bool truncated);

// The untruncated complex (ideal vertex classes are cells at infinity).
GluedComplex build_quotient(const SidePairingSystem& sys, const SymmetryAction* act = nullptr);

// Tile of M containing sigma k_x P, found by folding sigma k_x c into P_n.
KMask tile_image_by_folding(const SidePairingSystem& sys, const LorentzMatrix& sigma, KMask x);

}  // namespace hyperglue
