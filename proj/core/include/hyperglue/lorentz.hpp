#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperglue/integer.hpp"

namespace hyperglue {

// Integral vector of I_{n,1}. The last coordinate is the time coordinate.
class LorentzVector {
 public:
  LorentzVector() = default;
  explicit LorentzVector(std::vector<Integer> entries);
  LorentzVector(std::initializer_list<long long> entries);

  static LorentzVector zero(std::size_t size);
  static LorentzVector unit(std::size_t size, std::size_t index);

  std::size_t size() const { return entries_.size(); }
  std::size_t dimension() const { return entries_.empty() ? 0 : entries_.size() - 1; }
  const Integer& operator[](std::size_t i) const { return entries_[i]; }
  Integer& operator[](std::size_t i) { return entries_[i]; }
  const Integer& time() const { return entries_.back(); }
  const std::vector<Integer>& entries() const { return entries_; }

  LorentzVector operator+(const LorentzVector& o) const;
  LorentzVector operator-(const LorentzVector& o) const;
  LorentzVector operator-() const;
  LorentzVector operator*(const Integer& s) const;

  bool is_zero() const;
  // Divides out the gcd of the entries.
  LorentzVector primitive() const;

  bool operator==(const LorentzVector& o) const = default;
  std::strong_ordering operator<=>(const LorentzVector& o) const;

  std::string str() const;

 private:
  std::vector<Integer> entries_;
};

// x_1 y_1 + ... + x_n y_n - x_{n+1} y_{n+1}
Integer lorentz_product(const LorentzVector& x, const LorentzVector& y);
// Plain Euclidean dot product, used for orientation comparisons.
Integer euclidean_product(const LorentzVector& x, const LorentzVector& y);

bool is_root(const LorentzVector& a);
LorentzVector reflect(const LorentzVector& root, const LorentzVector& x);

class LorentzMatrix {
 public:
  LorentzMatrix() = default;
  explicit LorentzMatrix(std::size_t size);
  static LorentzMatrix identity(std::size_t size);
  static LorentzMatrix from_rows(const std::vector<std::vector<long long>>& rows);
  static LorentzMatrix from_rows(const std::vector<std::vector<Integer>>& rows);
  // diag(s_1, ..., s_n, 1) with s_i = -1 exactly when bit i-1 of mask is set.
  static LorentzMatrix sign_change(std::size_t size, std::uint32_t mask);
  static LorentzMatrix reflection(const LorentzVector& root);

  std::size_t size() const { return size_; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return entries_[i * size_ + j]; }
  Integer& operator()(std::size_t i, std::size_t j) { return entries_[i * size_ + j]; }

  LorentzMatrix operator*(const LorentzMatrix& o) const;
  LorentzVector operator*(const LorentzVector& x) const;
  bool operator==(const LorentzMatrix& o) const = default;

  LorentzMatrix transpose() const;
  // J M^T J, the inverse of any matrix in O(n,1).
  LorentzMatrix lorentz_inverse() const;
  LorentzMatrix power(unsigned k) const;
  Integer determinant() const;
  bool is_identity() const;
  LorentzVector column(std::size_t j) const;
  LorentzMatrix block(std::size_t first, std::size_t count) const;

  std::string str() const;

 private:
  std::size_t size_ = 0;
  std::vector<Integer> entries_;
};

bool is_lorentzian_integral(const LorentzMatrix& m);

// Least k <= cap with m^k = I; std::nullopt stands for "not within cap".
std::optional<unsigned> matrix_order(const LorentzMatrix& m, unsigned cap);

struct FoldResult {
  LorentzVector point;
  std::vector<int> word;  // indices into the normal list, in application order
};

// Greedy folding into {y : <y,u> <= 0 for all u}, always reflecting in the
// lowest-index violated wall. Points are homogeneous: any positive multiple
// of x names the same point of hyperbolic space.
FoldResult fold_to_chamber(LorentzVector x, std::span<const LorentzVector> normals,
                           std::size_t max_steps = 1000000);

// Exact determinant of a square integer matrix (Bareiss elimination).
Integer determinant(std::vector<std::vector<Integer>> m);

}  // namespace hyperglue
