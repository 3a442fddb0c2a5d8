#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hyperglue/lorentz.hpp"
#include "hyperglue/pairing_code.hpp"
#include "hyperglue/polytope.hpp"

namespace hyperglue {

// A side S_w of Q_n, w = k' . u for a wall u of P_n.
struct SideMap {
  LorentzVector normal;
  int wall = 0;
  KMask tiles = 0;    // k' restricted to the coordinate support of u
  KMask k = 0;        // the sign change assigned to the orbit of u
  int partner = 0;    // index of the side k . w
  LorentzMatrix map;  // g_w = rho_w k, carrying S_{k.w} onto S_w
};

class SidePairingSystem {
 public:
  // Uses the shared polytope(a.n).
  static SidePairingSystem expand(const Assignment& a);
  static SidePairingSystem expand(const PairingCode& code) { return expand(decode(code)); }

  int dimension() const { return polytope_->dimension(); }
  const Polytope& polytope() const { return *polytope_; }
  const Assignment& assignment() const { return assignment_; }
  PairingCode code() const { return encode(assignment_); }

  // The colour lambda(u) in (Z/2)^n: e_i for the coordinate wall i, the
  // assigned sign mask for the others.
  KMask color(int wall) const { return colors_[wall]; }
  const std::vector<KMask>& colors() const { return colors_; }

  const std::vector<SideMap>& sides() const { return sides_; }
  // The side of Q_n containing the tile-face (tile, wall); wall non-coordinate.
  int side_index(int wall, KMask tile) const;
  std::optional<int> find_side(const LorentzVector& normal) const;

 private:
  const Polytope* polytope_ = nullptr;
  Assignment assignment_;
  std::vector<KMask> colors_;
  std::vector<SideMap> sides_;
  std::vector<std::vector<int>> side_of_;  // [wall - n][tile] -> side
};

enum class FailureKind { side_fixity, ridge_cycle, cusp_cycle, face_cycle };
std::string to_string(FailureKind k);

struct ProperFailure {
  FailureKind kind;
  std::string witness;
};

struct ProperVerdict {
  std::vector<ProperFailure> failures;
  bool manifold() const { return failures.empty(); }
  bool has(FailureKind k) const;
};

// Poincare conditions: (a) no side map fixes a point of its side, (b) every
// ridge cycle has length 4 and trivial cycle transformation, (c) every cusp
// cycle fixes its null vector exactly, and (d) the sides through every finite
// face carry linearly independent colours, which rules out cone points on
// faces of codimension >= 3.
ProperVerdict check_proper(const SidePairingSystem& sys, std::size_t max_failures = 32);

struct Membership {
  bool member = false;
  std::vector<int> word;  // side indices; the product of their maps, in order, is g
  std::string reason;
};

Membership membership(const LorentzMatrix& g, const SidePairingSystem& sys);

// Product of the side maps named by word, left to right.
LorentzMatrix word_product(const SidePairingSystem& sys, const std::vector<int>& word);

// Classes of cusps (tile, ideal vertex) of M under the gluing, traced through
// the side maps.
struct CuspClass {
  int ideal_vertex = 0;    // face id in the polytope
  KMask tile = 0;          // least tile of the class
  std::size_t size = 0;    // tiles in the class
};
std::vector<CuspClass> cusp_classes(const SidePairingSystem& sys);

}  // namespace hyperglue
