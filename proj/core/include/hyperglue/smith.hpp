#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "hyperglue/integer.hpp"

namespace hyperglue {

// Column-major sparse integer matrix.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), columns_(cols) {}
  static SparseMatrix from_dense(const std::vector<std::vector<long long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  // Adds v to entry (i, j).
  void add(std::size_t i, std::size_t j, long long v);
  long long at(std::size_t i, std::size_t j) const;
  const std::vector<std::pair<int, long long>>& column(std::size_t j) const { return columns_[j]; }
  std::size_t nonzeros() const;

  SparseMatrix operator*(const SparseMatrix& o) const;
  bool is_zero() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::vector<std::pair<int, long long>>> columns_;  // sorted by row, no zeros
};

struct SmithForm {
  std::size_t rank = 0;
  // Nonzero invariant factors d_1 | d_2 | ... | d_rank, all positive.
  std::vector<Integer> factors;
  bool used_big_integers = false;

  // Factors different from 1.
  std::vector<Integer> torsion() const;
};

// Sparse elimination on unit pivots with fill-in control, then a dense
// finish on what is left. Runs in checked 64-bit arithmetic and restarts with
// arbitrary precision on overflow.
SmithForm smith_normal_form(const SparseMatrix& a);
SmithForm smith_normal_form(const std::vector<std::vector<long long>>& a);
SmithForm smith_normal_form_big(const SparseMatrix& a);

}  // namespace hyperglue
