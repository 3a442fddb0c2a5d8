#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hyperglue/glued_complex.hpp"
#include "hyperglue/smith.hpp"

namespace hyperglue {

class ChainComplex {
 public:
  // boundaries[k] is D_k : C_k -> C_{k-1}, with D_0 the zero map C_0 -> 0.
  // Throws std::invalid_argument on shape mismatch and std::logic_error when
  // D_{k-1} D_k != 0.
  ChainComplex(std::vector<std::size_t> counts, std::vector<SparseMatrix> boundaries);

  int top_dimension() const { return static_cast<int>(counts_.size()) - 1; }
  std::size_t count(int k) const { return counts_.at(k); }
  const std::vector<std::size_t>& counts() const { return counts_; }
  const SparseMatrix& boundary(int k) const { return boundaries_.at(k); }
  long euler_characteristic() const;

 private:
  std::vector<std::size_t> counts_;
  std::vector<SparseMatrix> boundaries_;
};

// The same gluing with every ideal vertex class cut away.
GluedComplex truncate(const GluedComplex& gc);

// Cellular chains of the finite cells of gc.
ChainComplex chain_complex(const GluedComplex& gc);

// Connected components of the truncation boundary.
std::size_t boundary_components(const GluedComplex& gc);

struct AbelianGroupSignature {
  std::size_t rank = 0;
  std::vector<Integer> torsion;  // invariant factors > 1, each dividing the next

  // Prime-power factors in increasing order.
  std::vector<Integer> primary() const;
  std::string str() const;  // "Z^2 + (Z/2)^3 + Z/8", "0" for the trivial group
  bool operator==(const AbelianGroupSignature&) const = default;
};

AbelianGroupSignature make_signature(std::size_t rank, std::vector<Integer> torsion);

// H_0 .. H_top. threads > 1 runs the Smith forms of different D_k concurrently.
std::vector<AbelianGroupSignature> homology(const ChainComplex& cc, unsigned threads = 1);

// Four digits abcd for Z^a + (Z/2)^b + (Z/4)^c + (Z/8)^d. Other torsion, or
// a count above 9, falls back to str() with the flag set.
struct AbcdCode {
  std::string text;
  bool extended = false;
};
AbcdCode abcd_code(const AbelianGroupSignature& g);

}  // namespace hyperglue
