#pragma once

// Invariant factors by determinantal divisors: d_k is the gcd of all k x k
// minors and the k-th invariant factor is d_k / d_{k-1}. Exponential in the
// size, meant for matrices up to about 8 x 8 with small entries.

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace hyperglue::oracle {

using i128 = __int128;

inline i128 abs128(i128 x) { return x < 0 ? -x : x; }

inline i128 gcd128(i128 a, i128 b) {
  a = abs128(a), b = abs128(b);
  while (b) {
    const i128 t = a % b;
    a = b, b = t;
  }
  return a;
}

// Fraction-free Bareiss elimination.
inline i128 det128(std::vector<std::vector<i128>> m) {
  const std::size_t n = m.size();
  i128 sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

inline void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> s(k);
  std::iota(s.begin(), s.end(), 0);
  if (k > n) return;
  while (true) {
    out.push_back(s);
    std::size_t i = k;
    while (i > 0 && s[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++s[i - 1];
    for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
  }
}

// Nonzero invariant factors, each dividing the next.
inline std::vector<long long> invariant_factors(const std::vector<std::vector<long long>>& a) {
  const std::size_t m = a.size(), n = m ? a[0].size() : 0;
  std::vector<long long> out;
  i128 prev = 1;
  for (std::size_t k = 1; k <= std::min(m, n); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    subsets(m, k, rs);
    subsets(n, k, cs);
    i128 g = 0;
    for (std::size_t x = 0; x < rs.size() * cs.size() && g != 1; ++x) {
      const auto& r = rs[x / cs.size()];
      const auto& c = cs[x % cs.size()];
      std::vector<std::vector<i128>> minor(k, std::vector<i128>(k));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) minor[i][j] = a[r[i]][c[j]];
      g = gcd128(g, det128(std::move(minor)));
    }
    if (g == 0) break;
    out.push_back(static_cast<long long>(g / prev));
    prev = g;
  }
  return out;
}

inline std::vector<std::vector<long long>> random_matrix(std::mt19937_64& rng, int max_size = 8, int bound = 20) {
  std::uniform_int_distribution<int> size(1, max_size), entry(-bound, bound), style(0, 3);
  const int rows = size(rng), cols = size(rng), s = style(rng);
  std::vector<std::vector<long long>> a(rows, std::vector<long long>(cols));
  for (auto& r : a)
    for (auto& v : r) v = entry(rng);
  if (s == 0) {
    // Low rank: rows repeat combinations of the first two.
    for (int i = 2; i < rows; ++i)
      for (int j = 0; j < cols; ++j) a[i][j] = (i % 3 - 1) * a[0][j] + (i % 2) * a[rows > 1 ? 1 : 0][j];
  } else if (s == 1) {
    // Sparse with small entries, the shape of boundary matrices.
    std::uniform_int_distribution<int> coin(0, 4), pm(-2, 2);
    for (auto& r : a)
      for (auto& v : r) v = coin(rng) ? 0 : pm(rng);
  }
  return a;
}

}  // namespace hyperglue::oracle
