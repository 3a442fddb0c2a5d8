#include "hyperglue/smith.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace hyperglue {

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<long long>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  SparseMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix");
    for (std::size_t j = 0; j < cols; ++j)
      if (rows[i][j]) m.add(i, j, rows[i][j]);
  }
  return m;
}

void SparseMatrix::add(std::size_t i, std::size_t j, long long v) {
  if (i >= rows_ || j >= cols_) throw std::out_of_range("SparseMatrix::add");
  auto& col = columns_[j];
  auto it = std::lower_bound(col.begin(), col.end(), std::pair<int, long long>(static_cast<int>(i), 0),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
  if (it != col.end() && it->first == static_cast<int>(i)) {
    it->second += v;
    if (it->second == 0) col.erase(it);
  } else if (v != 0) {
    col.insert(it, {static_cast<int>(i), v});
  }
}

long long SparseMatrix::at(std::size_t i, std::size_t j) const {
  for (const auto& [r, v] : columns_.at(j))
    if (r == static_cast<int>(i)) return v;
  return 0;
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.size();
  return n;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("SparseMatrix product: shape mismatch");
  SparseMatrix out(rows_, o.cols_);
  for (std::size_t j = 0; j < o.cols_; ++j)
    for (const auto& [k, b] : o.columns_[j])
      for (const auto& [i, a] : columns_[k]) out.add(i, j, a * b);
  return out;
}

bool SparseMatrix::is_zero() const {
  return std::all_of(columns_.begin(), columns_.end(), [](const auto& c) { return c.empty(); });
}

std::vector<Integer> SmithForm::torsion() const {
  std::vector<Integer> t;
  for (const auto& d : factors)
    if (d != 1) t.push_back(d);
  return t;
}

namespace {

struct Overflow {};

long long mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
long long sub(long long a, long long b) {
  long long r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}
long long abs_value(long long a) {
  if (a == std::numeric_limits<long long>::min()) throw Overflow{};
  return a < 0 ? -a : a;
}
Integer mul(const Integer& a, const Integer& b) { return a * b; }
Integer sub(const Integer& a, const Integer& b) { return a - b; }
Integer abs_value(const Integer& a) { return abs(a); }

template <class T>
using Row = std::vector<std::pair<int, T>>;

// row_a - f * row_b, both sorted.
template <class T>
Row<T> combine(const Row<T>& a, const T& f, const Row<T>& b) {
  Row<T> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, sub(T(0), mul(f, b[j].second)));
      ++j;
    } else {
      T v = sub(a[i].second, mul(f, b[j].second));
      if (v != 0) out.emplace_back(a[i].first, std::move(v));
      ++i, ++j;
    }
  }
  return out;
}

template <class T>
void dense_diagonal(std::vector<std::vector<T>> a, std::vector<T>& diag) {
  const std::size_t m = a.size(), n = m ? a[0].size() : 0;
  for (std::size_t k = 0; k < std::min(m, n); ++k) {
    while (true) {
      // Smallest nonzero entry of the trailing block goes to (k, k).
      std::size_t pi = m, pj = n;
      T best = 0;
      for (std::size_t i = k; i < m; ++i)
        for (std::size_t j = k; j < n; ++j)
          if (a[i][j] != 0 && (pi == m || abs_value(a[i][j]) < best)) {
            best = abs_value(a[i][j]);
            pi = i, pj = j;
          }
      if (pi == m) return;
      std::swap(a[k], a[pi]);
      for (auto& row : a) std::swap(row[k], row[pj]);
      bool clean = true;
      for (std::size_t i = k + 1; i < m; ++i) {
        if (a[i][k] == 0) continue;
        const T q = a[i][k] / a[k][k];
        for (std::size_t j = k; j < n; ++j) a[i][j] = sub(a[i][j], mul(q, a[k][j]));
        if (a[i][k] != 0) clean = false;
      }
      for (std::size_t j = k + 1; j < n; ++j) {
        if (a[k][j] == 0) continue;
        const T q = a[k][j] / a[k][k];
        for (std::size_t i = k; i < m; ++i) a[i][j] = sub(a[i][j], mul(q, a[i][k]));
        if (a[k][j] != 0) clean = false;
      }
      if (clean) break;
    }
    diag.push_back(abs_value(a[k][k]));
  }
}

template <class T>
SmithForm smith(const SparseMatrix& a) {
  const std::size_t m = a.rows();
  std::vector<Row<T>> rows(m);
  std::vector<std::set<int>> col_rows(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (const auto& [i, v] : a.column(j)) {
      rows[i].emplace_back(static_cast<int>(j), T(v));
      col_rows[j].insert(i);
    }

  auto entry = [&](int r, int j) -> const T& {
    const auto it = std::lower_bound(rows[r].begin(), rows[r].end(), std::pair<int, T>(j, T(0)),
                                     [](const auto& x, const auto& y) { return x.first < y.first; });
    return it->second;
  };

  std::size_t units = 0;
  while (true) {
    // Unit pivot of least Markowitz cost (row length - 1)(column count - 1).
    int pr = -1, pc = -1;
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < m && best > 0; ++i) {
      const auto& row = rows[i];
      for (const auto& [j, v] : row) {
        if (v != 1 && v != -1) continue;
        const std::size_t cost = (row.size() - 1) * (col_rows[j].size() - 1);
        if (cost < best) {
          best = cost;
          pr = static_cast<int>(i), pc = j;
          if (cost == 0) break;
        }
      }
    }
    if (pr < 0) break;
    const Row<T> pivot = std::move(rows[pr]);
    rows[pr].clear();
    T p = 0;
    for (const auto& [j, v] : pivot) {
      col_rows[j].erase(pr);
      if (j == pc) p = v;
    }
    const std::vector<int> targets(col_rows[pc].begin(), col_rows[pc].end());
    for (int r : targets) {
      const T f = mul(entry(r, pc), p);
      Row<T> updated = combine(rows[r], f, pivot);
      for (const auto& [j, _] : rows[r]) col_rows[j].erase(r);
      for (const auto& [j, _] : updated) col_rows[j].insert(r);
      rows[r] = std::move(updated);
    }
    ++units;
  }

  // Dense finish on the remaining non-unit block.
  std::vector<int> live_rows, live_cols;
  for (std::size_t i = 0; i < m; ++i)
    if (!rows[i].empty()) live_rows.push_back(static_cast<int>(i));
  for (std::size_t j = 0; j < col_rows.size(); ++j)
    if (!col_rows[j].empty()) live_cols.push_back(static_cast<int>(j));
  std::vector<std::vector<T>> dense(live_rows.size(), std::vector<T>(live_cols.size(), T(0)));
  for (std::size_t i = 0; i < live_rows.size(); ++i)
    for (const auto& [j, v] : rows[live_rows[i]]) {
      const auto pos = std::lower_bound(live_cols.begin(), live_cols.end(), j) - live_cols.begin();
      dense[i][pos] = v;
    }
  std::vector<T> diag;
  dense_diagonal(std::move(dense), diag);

  std::vector<Integer> d;
  for (const auto& v : diag) d.emplace_back(v);
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      const Integer g = gcd(d[i], d[j]);
      const Integer l = d[i] / g * d[j];
      d[i] = g, d[j] = l;
    }
  SmithForm out;
  out.rank = units + d.size();
  out.factors.assign(units, Integer(1));
  std::sort(d.begin(), d.end());
  out.factors.insert(out.factors.end(), d.begin(), d.end());
  return out;
}

}  // namespace

SmithForm smith_normal_form(const SparseMatrix& a) {
  try {
    return smith<long long>(a);
  } catch (const Overflow&) {
    return smith_normal_form_big(a);
  }
}

SmithForm smith_normal_form(const std::vector<std::vector<long long>>& a) {
  return smith_normal_form(SparseMatrix::from_dense(a));
}

SmithForm smith_normal_form_big(const SparseMatrix& a) {
  SmithForm s = smith<Integer>(a);
  s.used_big_integers = true;
  return s;
}

}  // namespace hyperglue
