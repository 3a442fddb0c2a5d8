#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hyperglue/lorentz.hpp"

namespace hyperglue {

// Bit w set <=> wall w contains the face.
using WallMask = std::uint64_t;

// Sign masks of K_n: bit i set <=> coordinate i+1 is negated.
using KMask = std::uint32_t;

struct Face {
  int dim = 0;
  WallMask support = 0;
  bool ideal = false;           // ideal vertex (a point at infinity)
  std::vector<int> vertices;    // vertex faces of the closure, finite and ideal
  std::vector<LorentzVector> basis;  // oriented basis of the linear span of the cone over the face
  LorentzVector center;         // sum of the primitive vertex generators
  std::vector<std::pair<int, int>> boundary;  // (facet id, incidence sign)
};

class Polytope {
 public:
  int dimension() const { return n_; }
  std::size_t wall_count() const { return normals_.size(); }
  const std::vector<LorentzVector>& normals() const { return normals_; }
  const LorentzVector& normal(int w) const { return normals_[w]; }
  const LorentzVector& interior_point() const { return interior_; }

  // Walls 0..n-1 are the coordinate walls -e_1..-e_n; the rest follow in the
  // canonical code order (time coordinate, then x_1..x_n lexicographically).
  bool is_coordinate_wall(int w) const { return w < n_; }
  std::size_t noncoordinate_count() const { return normals_.size() - n_; }

  bool has_face_lattice() const { return !faces_.empty(); }
  const std::vector<Face>& faces() const { return faces_; }
  const Face& face(int id) const { return faces_.at(id); }
  std::optional<int> find_face(WallMask support) const;
  int top_face() const { return top_; }
  std::vector<int> faces_of_dimension(int d, bool include_ideal = false) const;
  std::vector<int> finite_vertices() const;
  std::vector<int> ideal_vertices() const;
  // Number of finite faces per dimension 0..n.
  std::vector<std::size_t> face_census() const;

  // Walls that meet wall w in a ridge.
  WallMask neighbours(int w) const;

 private:
  friend Polytope build_P(int n);
  friend Polytope face_lattice(Polytope p);

  int n_ = 0;
  std::vector<LorentzVector> normals_;
  LorentzVector interior_;
  std::vector<Face> faces_;
  std::unordered_map<WallMask, int> by_support_;
  int top_ = -1;
};

Polytope build_P(int n);
Polytope face_lattice(Polytope p);

// face_lattice(build_P(n)), cached per n; the returned object is shared and immutable.
const Polytope& polytope(int n);

struct IdealVertex {
  LorentzVector point;
  WallMask support = 0;
};
std::vector<IdealVertex> ideal_vertices(const Polytope& p);

// A primitive integral basis of {x : <x, u> = 0 for all u in rows}.
std::vector<LorentzVector> lorentz_orthogonal_complement(std::span<const LorentzVector> rows);

// k . x for a sign mask k.
LorentzVector apply_sign(KMask k, const LorentzVector& x);

struct TileGluing {
  KMask tile = 0;
  KMask neighbour = 0;
  int coordinate = 0;
};

struct QSide {
  LorentzVector normal;        // hyperplane normal k . u
  int wall = 0;                // the wall u of P_n it comes from
  std::vector<KMask> tiles;    // tiles k' with k' . u = normal
};

struct TileComplex {
  int n = 0;
  std::vector<KMask> tiles;
  std::vector<TileGluing> internal_gluings;
  std::vector<QSide> sides;

  std::size_t tile_face_count() const;
};

TileComplex tile_complex(const Polytope& p);

}  // namespace hyperglue
