#include "hyperglue/homology.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace hyperglue {

ChainComplex::ChainComplex(std::vector<std::size_t> counts, std::vector<SparseMatrix> boundaries)
    : counts_(std::move(counts)), boundaries_(std::move(boundaries)) {
  if (boundaries_.size() != counts_.size()) throw std::invalid_argument("chain complex: one boundary map per degree");
  for (std::size_t k = 0; k < counts_.size(); ++k) {
    const auto& d = boundaries_[k];
    const std::size_t below = k == 0 ? 0 : counts_[k - 1];
    if (d.cols() != counts_[k] || d.rows() != below)
      throw std::invalid_argument("chain complex: D_" + std::to_string(k) + " has the wrong shape");
    if (k == 0 && !d.is_zero()) throw std::invalid_argument("chain complex: D_0 must vanish");
    if (k >= 2 && !(boundaries_[k - 1] * d).is_zero())
      throw std::logic_error("chain complex: D_" + std::to_string(k - 1) + " D_" + std::to_string(k) + " != 0");
  }
}

long ChainComplex::euler_characteristic() const {
  long chi = 0;
  for (std::size_t k = 0; k < counts_.size(); ++k) chi += (k % 2 ? -1L : 1L) * static_cast<long>(counts_[k]);
  return chi;
}

GluedComplex truncate(const GluedComplex& gc) {
  if (gc.truncated()) return gc;
  return build_glued(gc.system(), gc.action(), true);
}

ChainComplex chain_complex(const GluedComplex& gc) {
  const int n = gc.dimension();
  const auto& cells = gc.cells();
  std::vector<std::size_t> counts(n + 1, 0);
  std::vector<int> local(cells.size(), -1);
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (!cells[i].at_infinity) local[i] = static_cast<int>(counts[cells[i].dim]++);
  std::vector<SparseMatrix> d;
  d.emplace_back(0, counts[0]);
  for (int k = 1; k <= n; ++k) d.emplace_back(counts[k - 1], counts[k]);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (local[i] < 0 || cells[i].dim == 0) continue;
    for (const auto& [b, v] : gc.boundaries()[i])
      if (local[b] >= 0) d[cells[i].dim].add(local[b], local[i], v);
  }
  return ChainComplex(std::move(counts), std::move(d));
}

std::size_t boundary_components(const GluedComplex& gc) {
  const auto& cells = gc.cells();
  std::vector<int> parent(cells.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  // Every boundary cell is joined to the boundary cells on its own boundary.
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!cells[i].on_boundary) continue;
    for (const auto& [b, _] : gc.boundaries()[i])
      if (cells[b].on_boundary) parent[find(b)] = find(static_cast<int>(i));
  }
  std::size_t count = 0;
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (cells[i].on_boundary && find(static_cast<int>(i)) == static_cast<int>(i)) ++count;
  return count;
}

namespace {

std::vector<std::pair<Integer, int>> factorize(Integer m) {
  std::vector<std::pair<Integer, int>> f;
  for (Integer p = 2; p * p <= m; ++p) {
    int e = 0;
    while (m % p == 0) m /= p, ++e;
    if (e) f.emplace_back(p, e);
  }
  if (m > 1) f.emplace_back(m, 1);
  return f;
}

}  // namespace

AbelianGroupSignature make_signature(std::size_t rank, std::vector<Integer> torsion) {
  std::vector<Integer> d;
  for (auto& t : torsion) {
    if (t < 0) t = -t;
    if (t == 0) throw std::invalid_argument("signature: zero torsion factor");
    if (t != 1) d.push_back(t);
  }
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      const Integer g = gcd(d[i], d[j]);
      const Integer l = d[i] / g * d[j];
      d[i] = g, d[j] = l;
    }
  d.erase(std::remove(d.begin(), d.end(), Integer(1)), d.end());
  std::sort(d.begin(), d.end());
  return {rank, d};
}

std::vector<Integer> AbelianGroupSignature::primary() const {
  std::vector<Integer> out;
  for (const auto& t : torsion)
    for (const auto& [p, e] : factorize(t)) out.push_back(pow(p, static_cast<unsigned>(e)));
  std::sort(out.begin(), out.end());
  return out;
}

std::string AbelianGroupSignature::str() const {
  std::vector<std::string> parts;
  if (rank == 1) parts.push_back("Z");
  if (rank > 1) parts.push_back("Z^" + std::to_string(rank));
  const auto prim = primary();
  for (std::size_t i = 0; i < prim.size();) {
    std::size_t j = i;
    while (j < prim.size() && prim[j] == prim[i]) ++j;
    const std::string base = "Z/" + prim[i].str();
    parts.push_back(j - i == 1 ? base : "(" + base + ")^" + std::to_string(j - i));
    i = j;
  }
  if (parts.empty()) return "0";
  std::string s = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) s += " + " + parts[i];
  return s;
}

std::vector<AbelianGroupSignature> homology(const ChainComplex& cc, unsigned threads) {
  const int n = cc.top_dimension();
  std::vector<SmithForm> snf(n + 2);
  auto run = [&](int k) {
    if (k >= 1 && k <= n) snf[k] = smith_normal_form(cc.boundary(k));
  };
  if (threads > 1) {
    // Largest matrices first so the longest job starts early.
    std::vector<int> order;
    for (int k = 1; k <= n; ++k) order.push_back(k);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return cc.boundary(a).nonzeros() > cc.boundary(b).nonzeros(); });
    std::size_t next = 0;
    std::mutex m;
    std::vector<std::future<void>> workers;
    for (unsigned t = 0; t < std::min<unsigned>(threads, n); ++t)
      workers.push_back(std::async(std::launch::async, [&] {
        while (true) {
          int k;
          {
            std::lock_guard lock(m);
            if (next == order.size()) return;
            k = order[next++];
          }
          run(k);
        }
      }));
    for (auto& w : workers) w.get();
  } else {
    for (int k = 1; k <= n; ++k) run(k);
  }
  std::vector<AbelianGroupSignature> h;
  for (int k = 0; k <= n; ++k) {
    const std::size_t rank_out = k >= 1 ? snf[k].rank : 0;
    const std::size_t rank_in = k + 1 <= n ? snf[k + 1].rank : 0;
    const std::size_t free = cc.count(k) - rank_out - rank_in;
    h.push_back(make_signature(free, k + 1 <= n ? snf[k + 1].torsion() : std::vector<Integer>{}));
  }
  return h;
}

AbcdCode abcd_code(const AbelianGroupSignature& g) {
  std::size_t digits[4] = {g.rank, 0, 0, 0};
  bool other = false;
  for (const auto& q : g.primary()) {
    if (q == 2) ++digits[1];
    else if (q == 4) ++digits[2];
    else if (q == 8) ++digits[3];
    else other = true;
  }
  if (other || std::any_of(std::begin(digits), std::end(digits), [](std::size_t d) { return d > 9; }))
    return {g.str(), true};
  std::string s;
  for (auto d : digits) s += static_cast<char>('0' + d);
  return {s, false};
}

}  // namespace hyperglue
