#include "hyperglue/coxeter.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hyperglue {

CoxeterDiagram::CoxeterDiagram(int rank) : rank_(rank), labels_(rank * rank, 2) {
  if (rank < 0) throw std::invalid_argument("negative rank");
  for (int i = 0; i < rank; ++i) labels_[i * rank + i] = 1;
}

void CoxeterDiagram::set_label(int i, int j, int m) {
  if (i < 0 || j < 0 || i >= rank_ || j >= rank_) throw std::out_of_range("diagram node");
  if (i == j) throw std::invalid_argument("diagonal labels are fixed");
  if (m != infinity && m < 2) throw std::invalid_argument("label must be >= 2 or infinity");
  labels_[i * rank_ + j] = m;
  labels_[j * rank_ + i] = m;
}

CoxeterDiagram CoxeterDiagram::induced(std::span<const int> nodes) const {
  CoxeterDiagram d(static_cast<int>(nodes.size()));
  for (std::size_t a = 0; a < nodes.size(); ++a)
    for (std::size_t b = a + 1; b < nodes.size(); ++b)
      d.set_label(static_cast<int>(a), static_cast<int>(b), label(nodes[a], nodes[b]));
  return d;
}

CoxeterDiagram CoxeterDiagram::without(std::span<const int> nodes) const {
  std::vector<int> keep;
  for (int i = 0; i < rank_; ++i)
    if (std::find(nodes.begin(), nodes.end(), i) == nodes.end()) keep.push_back(i);
  return induced(keep);
}

std::vector<std::vector<int>> CoxeterDiagram::components() const {
  std::vector<int> comp(rank_, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < rank_; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> nodes{s};
    comp[s] = static_cast<int>(out.size());
    for (std::size_t k = 0; k < nodes.size(); ++k)
      for (int j = 0; j < rank_; ++j)
        if (comp[j] < 0 && label(nodes[k], j) != 2) {
          comp[j] = comp[s];
          nodes.push_back(j);
        }
    std::sort(nodes.begin(), nodes.end());
    out.push_back(std::move(nodes));
  }
  return out;
}

CoxeterDiagram CoxeterDiagram::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<CoxeterDiagram> d;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    auto bad = [&](const std::string& why) {
      return std::invalid_argument("diagram line " + std::to_string(line_no) + ": " + why);
    };
    try {
      if (!d) {
        if (tok.size() != 1) throw bad("expected the rank");
        d.emplace(std::stoi(tok[0]));
        continue;
      }
      if (tok.size() != 3) throw bad("expected 'i j m'");
      const int i = std::stoi(tok[0]) - 1;
      const int j = std::stoi(tok[1]) - 1;
      const int m = (tok[2] == "inf" || tok[2] == "∞") ? infinity : std::stoi(tok[2]);
      d->set_label(i, j, m);
    } catch (const std::invalid_argument& e) {
      throw bad(e.what());
    } catch (const std::out_of_range& e) {
      throw bad(e.what());
    }
  }
  if (!d) throw std::invalid_argument("empty diagram");
  return *d;
}

CoxeterDiagram diagram_from_roots(std::span<const LorentzVector> roots) {
  CoxeterDiagram d(static_cast<int>(roots.size()));
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (!is_root(roots[i])) throw std::invalid_argument("not a root: " + roots[i].str());
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      const Integer p = lorentz_product(roots[i], roots[j]);
      const Integer qq = lorentz_product(roots[i], roots[i]) * lorentz_product(roots[j], roots[j]);
      int m;
      if (p > 0) throw std::invalid_argument("obtuse pair of roots");
      if (p == 0) m = 2;
      else if (4 * p * p == qq) m = 3;
      else if (2 * p * p == qq) m = 4;
      else if (4 * p * p == 3 * qq) m = 6;
      else if (p * p >= qq) m = CoxeterDiagram::infinity;
      else throw std::invalid_argument("roots do not realize a Coxeter angle");
      d.set_label(static_cast<int>(i), static_cast<int>(j), m);
    }
  }
  return d;
}

namespace {

struct ComponentType {
  std::string name;
  Integer order;
};

Integer factorial(int k) {
  Integer f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

std::optional<ComponentType> classify(const CoxeterDiagram& d) {
  const int r = d.rank();
  if (r == 0) return ComponentType{"", 1};
  if (r == 1) return ComponentType{"A1", 2};
  std::vector<std::vector<int>> adj(r);
  int edges = 0;
  std::vector<std::pair<int, int>> big;  // edges with label > 3
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      const int m = d.label(i, j);
      if (m == 2) continue;
      if (m == CoxeterDiagram::infinity) return std::nullopt;
      adj[i].push_back(j);
      adj[j].push_back(i);
      ++edges;
      if (m > 3) big.emplace_back(i, j);
    }
  if (edges != r - 1) return std::nullopt;  // cycle
  if (r == 2) {
    const int m = d.label(0, 1);
    return ComponentType{"I2(" + std::to_string(m) + ")", 2 * m};
  }
  std::vector<int> branch;
  for (int i = 0; i < r; ++i) {
    if (adj[i].size() > 3) return std::nullopt;
    if (adj[i].size() == 3) branch.push_back(i);
  }
  if (branch.size() > 1 || big.size() > 1) return std::nullopt;
  if (!big.empty()) {
    if (!branch.empty()) return std::nullopt;
    const auto [a, b] = big.front();
    const int m = d.label(a, b);
    const bool at_end = adj[a].size() == 1 || adj[b].size() == 1;
    if (m == 4 && at_end) return ComponentType{"B" + std::to_string(r), (Integer(1) << r) * factorial(r)};
    if (m == 4 && r == 4) return ComponentType{"F4", 1152};
    if (m == 5 && at_end && r == 3) return ComponentType{"H3", 120};
    if (m == 5 && at_end && r == 4) return ComponentType{"H4", 14400};
    return std::nullopt;
  }
  if (branch.empty()) return ComponentType{"A" + std::to_string(r), factorial(r + 1)};
  const int c = branch.front();
  std::vector<int> arms;
  for (int start : adj[c]) {
    int len = 1, prev = c, cur = start;
    while (adj[cur].size() == 2) {
      const int next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = next;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1)
    return ComponentType{"D" + std::to_string(r), (Integer(1) << (r - 1)) * factorial(r)};
  if (arms[0] == 1 && arms[1] == 2 && arms[2] == 2) return ComponentType{"E6", 51840};
  if (arms[0] == 1 && arms[1] == 2 && arms[2] == 3) return ComponentType{"E7", 2903040};
  if (arms[0] == 1 && arms[1] == 2 && arms[2] == 4) return ComponentType{"E8", 696729600};
  return std::nullopt;
}

}  // namespace

std::optional<Integer> spherical_order(const CoxeterDiagram& d) {
  Integer order = 1;
  for (const auto& comp : d.components()) {
    const auto t = classify(d.induced(comp));
    if (!t) return std::nullopt;
    order *= t->order;
  }
  return order;
}

std::optional<std::string> spherical_type(const CoxeterDiagram& d) {
  std::vector<std::string> names;
  for (const auto& comp : d.components()) {
    const auto t = classify(d.induced(comp));
    if (!t) return std::nullopt;
    names.push_back(t->name);
  }
  std::sort(names.begin(), names.end());
  std::string out;
  for (const auto& nm : names) out += (out.empty() ? "" : "x") + nm;
  return out.empty() ? std::string("trivial") : out;
}

Rational euler_characteristic(const CoxeterDiagram& d) {
  if (d.rank() > 24) throw std::invalid_argument("diagram rank too large");
  Rational chi = 0;
  const unsigned long subsets = 1ul << d.rank();
  for (unsigned long mask = 0; mask < subsets; ++mask) {
    std::vector<int> nodes;
    for (int i = 0; i < d.rank(); ++i)
      if (mask >> i & 1ul) nodes.push_back(i);
    const auto order = spherical_order(d.induced(nodes));
    if (!order) continue;
    const Rational term(Integer(1), *order);
    if (nodes.size() % 2) chi -= term;
    else chi += term;
  }
  return chi;
}

CoxeterDiagram SimplexRealization::diagram() const { return diagram_from_roots(roots); }

CoxeterDiagram SimplexRealization::vertex_stabilizer() const {
  const int drop[] = {v_index};
  return diagram().without(drop);
}

CoxeterDiagram SimplexRealization::edge_stabilizer() const {
  const int drop[] = {v_index, e_index};
  return diagram().without(drop);
}

std::vector<LorentzVector> SimplexRealization::vertex_roots() const {
  std::vector<LorentzVector> out;
  for (int i = 0; i < static_cast<int>(roots.size()); ++i)
    if (i != v_index) out.push_back(roots[i]);
  return out;
}

SimplexRealization simplex_roots(int n) {
  if (n < 4 || n > 8) throw std::invalid_argument("simplex_roots: n must lie in 4..8");
  const std::size_t size = n + 1;
  SimplexRealization s;
  s.n = n;
  s.roots.push_back(LorentzVector::unit(size, 0));
  for (int i = 1; i < n; ++i) s.roots.push_back(LorentzVector::unit(size, i) - LorentzVector::unit(size, i - 1));
  LorentzVector last = LorentzVector::unit(size, n);
  for (int i = n - 3; i < n; ++i) last = last - LorentzVector::unit(size, i);
  s.roots.push_back(last);
  return s;
}

std::vector<LorentzVector> vector_orbit(const LorentzVector& v, std::span<const LorentzVector> roots,
                                        std::size_t cap) {
  std::set<LorentzVector> seen{v};
  std::deque<LorentzVector> queue{v};
  while (!queue.empty()) {
    const LorentzVector x = queue.front();
    queue.pop_front();
    for (const auto& r : roots) {
      LorentzVector y = reflect(r, x);
      if (seen.insert(y).second) {
        if (seen.size() > cap) throw std::length_error("vector_orbit: orbit exceeds cap");
        queue.push_back(std::move(y));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace hyperglue
