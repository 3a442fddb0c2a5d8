#pragma once

#include <array>
#include <optional>
#include <vector>

#include "hyperglue/lorentz.hpp"
#include "hyperglue/polytope.hpp"
#include "hyperglue/side_pairing.hpp"

namespace hyperglue {

// The generator of the Z/8 symmetry for n = 6, and its restriction for n = 5.
const LorentzMatrix& builtin_sigma(int n);

// sigma = gamma h with gamma in the reflection group of P_n (the fold word)
// and h a symmetry of P_n, found by folding sigma.c back into P_n.
class SymmetryAction {
 public:
  static SymmetryAction decompose(const Polytope& p, const LorentzMatrix& sigma);

  const Polytope& polytope() const { return *polytope_; }
  const LorentzMatrix& sigma() const { return sigma_; }
  const LorentzMatrix& stabilizer_part() const { return h_; }
  const std::vector<int>& fold_word() const { return word_; }

  int wall_image(int w) const { return wall_image_[w]; }
  int face_image(int f) const { return face_image_[f]; }
  // Whether h carries the oriented basis of face f to that of its image positively.
  int face_sign(int f) const { return face_sign_[f]; }

 private:
  const Polytope* polytope_ = nullptr;
  LorentzMatrix sigma_;
  LorentzMatrix h_;
  std::vector<int> word_;
  std::vector<int> wall_image_;
  std::vector<int> face_image_;
  std::vector<int> face_sign_;
};

// x -> A x + b on tile labels in (Z/2)^n; columns[i] = A e_i.
struct TileMap {
  int n = 0;
  std::array<KMask, 8> columns{};
  KMask offset = 0;

  KMask apply(KMask x) const;
  TileMap compose(const TileMap& o) const;  // this after o
  TileMap power(unsigned j) const;
  bool is_identity() const;
  bool operator==(const TileMap&) const = default;
};

// The map sigma induces on tiles, or nullopt when lambda(h u) = A lambda(u)
// has no linear solution A (sigma does not normalize the gluing group).
std::optional<TileMap> induced_tile_map(const SidePairingSystem& sys, const SymmetryAction& act);

// sigma g_w sigma^-1 lies in the gluing group for every side map, checked by
// membership.
bool check_equivariance(const SidePairingSystem& sys, const LorentzMatrix& sigma);

// No power sigma^j, j = 1..7, maps a cell of M onto itself.
bool check_free(const SidePairingSystem& sys, const SymmetryAction& act);

// Least j <= cap with sigma^j in the gluing group.
std::optional<unsigned> induced_order(const SidePairingSystem& sys, const LorentzMatrix& sigma, unsigned cap = 64);

bool orientable(const SidePairingSystem& sys, const LorentzMatrix* sigma = nullptr);

// Cusps of M, or of M / <sigma> when act is given.
std::size_t cusp_count(const SidePairingSystem& sys, const SymmetryAction* act = nullptr);

}  // namespace hyperglue
