#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hyperglue/integer.hpp"
#include "hyperglue/lorentz.hpp"

namespace hyperglue {

// Symmetric label matrix; 1 on the diagonal, m_ij >= 2 off it, and
// CoxeterDiagram::infinity for parallel or ultraparallel mirrors.
class CoxeterDiagram {
 public:
  static constexpr int infinity = 0;

  explicit CoxeterDiagram(int rank = 0);

  int rank() const { return rank_; }
  int label(int i, int j) const { return labels_[i * rank_ + j]; }
  void set_label(int i, int j, int m);

  CoxeterDiagram induced(std::span<const int> nodes) const;
  CoxeterDiagram without(std::span<const int> nodes) const;
  std::vector<std::vector<int>> components() const;

  // Text format: rank on the first line, then edges "i j m" with 1-based
  // nodes and m an integer >= 2 or "inf". Unlisted pairs commute (m = 2).
  static CoxeterDiagram parse(std::string_view text);

  bool operator==(const CoxeterDiagram&) const = default;

 private:
  int rank_ = 0;
  std::vector<int> labels_;
};

// Gram-matrix reading of a set of roots; exact via integer identities.
CoxeterDiagram diagram_from_roots(std::span<const LorentzVector> roots);

std::optional<Integer> spherical_order(const CoxeterDiagram& d);
// Type of a spherical diagram such as "D5" or "A2xA1"; nullopt when infinite.
std::optional<std::string> spherical_type(const CoxeterDiagram& d);

Rational euler_characteristic(const CoxeterDiagram& d);

struct SimplexRealization {
  int n = 0;
  std::vector<LorentzVector> roots;
  int v_index = 0;  // F_1, opposite the vertex v
  int e_index = 1;  // F_2

  CoxeterDiagram diagram() const;
  CoxeterDiagram vertex_stabilizer() const;  // Gamma_v
  CoxeterDiagram edge_stabilizer() const;    // Gamma_e
  std::vector<LorentzVector> vertex_roots() const;
};

SimplexRealization simplex_roots(int n);

// Closure of {v} under the reflections in roots, sorted ascending.
std::vector<LorentzVector> vector_orbit(const LorentzVector& v,
                                        std::span<const LorentzVector> roots,
                                        std::size_t cap = 100000);

}  // namespace hyperglue
