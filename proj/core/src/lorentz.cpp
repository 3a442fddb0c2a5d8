#include "hyperglue/lorentz.hpp"

#include <sstream>
#include <stdexcept>

namespace hyperglue {

namespace {

void require_same_size(const LorentzVector& x, const LorentzVector& y) {
  if (x.size() != y.size()) throw std::invalid_argument("vector length mismatch");
}

}  // namespace

LorentzVector::LorentzVector(std::vector<Integer> entries) : entries_(std::move(entries)) {}

LorentzVector::LorentzVector(std::initializer_list<long long> entries) {
  entries_.reserve(entries.size());
  for (long long e : entries) entries_.emplace_back(e);
}

LorentzVector LorentzVector::zero(std::size_t size) {
  return LorentzVector(std::vector<Integer>(size));
}

LorentzVector LorentzVector::unit(std::size_t size, std::size_t index) {
  LorentzVector v = zero(size);
  v.entries_.at(index) = 1;
  return v;
}

LorentzVector LorentzVector::operator+(const LorentzVector& o) const {
  require_same_size(*this, o);
  LorentzVector r = *this;
  for (std::size_t i = 0; i < size(); ++i) r.entries_[i] += o.entries_[i];
  return r;
}

LorentzVector LorentzVector::operator-(const LorentzVector& o) const {
  require_same_size(*this, o);
  LorentzVector r = *this;
  for (std::size_t i = 0; i < size(); ++i) r.entries_[i] -= o.entries_[i];
  return r;
}

LorentzVector LorentzVector::operator-() const {
  LorentzVector r = *this;
  for (auto& e : r.entries_) e = -e;
  return r;
}

LorentzVector LorentzVector::operator*(const Integer& s) const {
  LorentzVector r = *this;
  for (auto& e : r.entries_) e *= s;
  return r;
}

bool LorentzVector::is_zero() const {
  for (const auto& e : entries_)
    if (e != 0) return false;
  return true;
}

LorentzVector LorentzVector::primitive() const {
  Integer g = 0;
  for (const auto& e : entries_) g = boost::multiprecision::gcd(g, e);
  if (g == 0 || g == 1) return *this;
  LorentzVector r = *this;
  for (auto& e : r.entries_) e /= g;
  return r;
}

std::strong_ordering LorentzVector::operator<=>(const LorentzVector& o) const {
  const std::size_t m = std::min(size(), o.size());
  for (std::size_t i = 0; i < m; ++i) {
    if (entries_[i] < o.entries_[i]) return std::strong_ordering::less;
    if (entries_[i] > o.entries_[i]) return std::strong_ordering::greater;
  }
  return size() <=> o.size();
}

std::string LorentzVector::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) s += ",";
    s += entries_[i].str();
  }
  return s + ")";
}

Integer lorentz_product(const LorentzVector& x, const LorentzVector& y) {
  require_same_size(x, y);
  if (x.size() == 0) return 0;
  Integer s = 0;
  const std::size_t n = x.size() - 1;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  s -= x[n] * y[n];
  return s;
}

Integer euclidean_product(const LorentzVector& x, const LorentzVector& y) {
  require_same_size(x, y);
  Integer s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

bool is_root(const LorentzVector& a) {
  const Integer q = lorentz_product(a, a);
  return q == 1 || q == 2;
}

LorentzVector reflect(const LorentzVector& root, const LorentzVector& x) {
  const Integer q = lorentz_product(root, root);
  if (q != 1 && q != 2) throw std::invalid_argument("reflection in a non-root " + root.str());
  const Integer k = 2 * lorentz_product(x, root) / q;
  return x - root * k;
}

LorentzMatrix::LorentzMatrix(std::size_t size) : size_(size), entries_(size * size) {}

LorentzMatrix LorentzMatrix::identity(std::size_t size) {
  LorentzMatrix m(size);
  for (std::size_t i = 0; i < size; ++i) m(i, i) = 1;
  return m;
}

LorentzMatrix LorentzMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
  LorentzMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw std::invalid_argument("matrix is not square");
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

LorentzMatrix LorentzMatrix::from_rows(const std::vector<std::vector<Integer>>& rows) {
  LorentzMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw std::invalid_argument("matrix is not square");
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

LorentzMatrix LorentzMatrix::sign_change(std::size_t size, std::uint32_t mask) {
  LorentzMatrix m = identity(size);
  for (std::size_t i = 0; i + 1 < size; ++i)
    if (mask >> i & 1u) m(i, i) = -1;
  return m;
}

LorentzMatrix LorentzMatrix::reflection(const LorentzVector& root) {
  const std::size_t n = root.size();
  LorentzMatrix m(n);
  for (std::size_t j = 0; j < n; ++j) {
    const LorentzVector col = reflect(root, LorentzVector::unit(n, j));
    for (std::size_t i = 0; i < n; ++i) m(i, j) = col[i];
  }
  return m;
}

LorentzMatrix LorentzMatrix::operator*(const LorentzMatrix& o) const {
  if (size_ != o.size_) throw std::invalid_argument("matrix size mismatch");
  LorentzMatrix r(size_);
  for (std::size_t i = 0; i < size_; ++i)
    for (std::size_t k = 0; k < size_; ++k) {
      const Integer& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < size_; ++j) {
        const Integer& b = o(k, j);
        if (b != 0) r(i, j) += a * b;
      }
    }
  return r;
}

LorentzVector LorentzMatrix::operator*(const LorentzVector& x) const {
  if (x.size() != size_) throw std::invalid_argument("matrix/vector size mismatch");
  std::vector<Integer> out(size_);
  for (std::size_t i = 0; i < size_; ++i)
    for (std::size_t j = 0; j < size_; ++j) {
      const Integer& a = (*this)(i, j);
      if (a != 0) out[i] += a * x[j];
    }
  return LorentzVector(std::move(out));
}

LorentzMatrix LorentzMatrix::transpose() const {
  LorentzMatrix r(size_);
  for (std::size_t i = 0; i < size_; ++i)
    for (std::size_t j = 0; j < size_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

LorentzMatrix LorentzMatrix::lorentz_inverse() const {
  LorentzMatrix r = transpose();
  const std::size_t t = size_ - 1;
  for (std::size_t i = 0; i < size_; ++i)
    for (std::size_t j = 0; j < size_; ++j)
      if ((i == t) != (j == t)) r(i, j) = -r(i, j);
  return r;
}

LorentzMatrix LorentzMatrix::power(unsigned k) const {
  LorentzMatrix result = identity(size_);
  LorentzMatrix base = *this;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

Integer LorentzMatrix::determinant() const {
  std::vector<std::vector<Integer>> rows(size_, std::vector<Integer>(size_));
  for (std::size_t i = 0; i < size_; ++i)
    for (std::size_t j = 0; j < size_; ++j) rows[i][j] = (*this)(i, j);
  return hyperglue::determinant(std::move(rows));
}

bool LorentzMatrix::is_identity() const { return *this == identity(size_); }

LorentzVector LorentzMatrix::column(std::size_t j) const {
  std::vector<Integer> out(size_);
  for (std::size_t i = 0; i < size_; ++i) out[i] = (*this)(i, j);
  return LorentzVector(std::move(out));
}

LorentzMatrix LorentzMatrix::block(std::size_t first, std::size_t count) const {
  if (first + count > size_) throw std::out_of_range("block outside matrix");
  LorentzMatrix r(count);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < count; ++j) r(i, j) = (*this)(first + i, first + j);
  return r;
}

std::string LorentzMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < size_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < size_; ++j) os << (j ? "," : "") << (*this)(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

bool is_lorentzian_integral(const LorentzMatrix& m) {
  if (m.size() == 0) return false;
  return m.lorentz_inverse() * m == LorentzMatrix::identity(m.size());
}

std::optional<unsigned> matrix_order(const LorentzMatrix& m, unsigned cap) {
  if (cap < 1) throw std::invalid_argument("order cap must be positive");
  LorentzMatrix p = m;
  for (unsigned k = 1; k <= cap; ++k) {
    if (p.is_identity()) return k;
    if (k < cap) p = p * m;
  }
  return std::nullopt;
}

FoldResult fold_to_chamber(LorentzVector x, std::span<const LorentzVector> normals,
                           std::size_t max_steps) {
  if (lorentz_product(x, x) >= 0) throw std::invalid_argument("fold of a non-timelike vector");
  FoldResult r;
  for (std::size_t step = 0;; ++step) {
    std::size_t hit = normals.size();
    for (std::size_t i = 0; i < normals.size(); ++i)
      if (lorentz_product(x, normals[i]) > 0) {
        hit = i;
        break;
      }
    if (hit == normals.size()) break;
    if (step == max_steps) throw std::runtime_error("fold_to_chamber: step limit reached");
    x = reflect(normals[hit], x);
    r.word.push_back(static_cast<int>(hit));
  }
  r.point = std::move(x);
  return r;
}

Integer determinant(std::vector<std::vector<Integer>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace hyperglue
