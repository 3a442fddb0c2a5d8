#include "hyperglue/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include <boost/crc.hpp>
#include <json.hpp>

#include "hyperglue/polytope.hpp"
#include "hyperglue/side_pairing.hpp"
#include "hyperglue/symmetry.hpp"

namespace hyperglue {

namespace {

using Colors = std::vector<int>;  // -1: unassigned

bool independent(std::vector<KMask> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i]) return false;
    const KMask low = v[i] & (~v[i] + 1);
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (v[j] & low) v[j] ^= v[i];
  }
  return true;
}

// Supports of the finite faces that are maximal among finite faces.
std::vector<WallMask> maximal_finite_supports(const Polytope& p) {
  std::vector<WallMask> all;
  for (const Face& f : p.faces())
    if (!f.ideal && f.support) all.push_back(f.support);
  std::vector<WallMask> out;
  for (WallMask s : all) {
    const bool covered = std::any_of(all.begin(), all.end(), [&](WallMask t) { return t != s && (s & t) == s; });
    if (!covered) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Row-echelon basis over F_2 keyed by the highest bit.
struct Echelon {
  std::vector<std::uint32_t> rows;
  std::uint32_t reduce(std::uint32_t v) const {
    for (auto r : rows)
      if (v & (1u << (31 - std::countl_zero(r)))) v ^= r;
    return v;
  }
  void add(std::uint32_t v) {
    v = reduce(v);
    if (!v) return;
    rows.push_back(v);
    std::sort(rows.begin(), rows.end(), std::greater<>());
  }
};

struct Prefix {
  std::vector<int> choices;
  Colors colors;
  bool leaf = false;
};

class Engine {
 public:
  explicit Engine(const SearchOptions& o) : opt_(o), P_(hyperglue::polytope(o.n)), n_(o.n) {
    if (o.n < 4 || o.n > 6) throw std::invalid_argument("search: dimension must be 4, 5 or 6");
    W_ = static_cast<int>(P_.wall_count());
    constraints_ = maximal_finite_supports(P_);
    by_wall_.resize(W_);
    for (std::size_t c = 0; c < constraints_.size(); ++c)
      for (int w = 0; w < W_; ++w)
        if (constraints_[c] >> w & 1) by_wall_[w].push_back(static_cast<int>(c));
    if (o.sigma) {
      act_ = SymmetryAction::decompose(P_, *o.sigma);
      pi_.resize(W_);
      pi_inv_.resize(W_);
      for (int w = 0; w < W_; ++w) {
        pi_[w] = act_->wall_image(w);
        pi_inv_[pi_[w]] = w;
      }
    }
    if ((o.restriction_seed || o.restriction_proper) && n_ != 6)
      throw std::invalid_argument("search: restriction constraints need n = 6");
    if (n_ == 6 && (o.restriction_seed || o.restriction_proper)) setup_restriction();
    setup_domains();
    // Static order: most incident ridges first, then wall index.
    std::vector<int> degree(W_, 0);
    for (int fid : P_.faces_of_dimension(n_ - 2))
      for (int w = 0; w < W_; ++w)
        if (P_.face(fid).support >> w & 1) ++degree[w];
    for (int w = n_; w < W_; ++w) order_.push_back(w);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) { return degree[a] > degree[b]; });
  }

  Colors root() const {
    Colors c(W_, -1);
    for (int i = 0; i < n_; ++i) c[i] = 1 << i;
    if (!propagate(c)) return {};
    return c;
  }

  // Next branching wall, or -1 when complete.
  int next_wall(const Colors& c) const {
    for (int w : order_)
      if (c[w] < 0) return w;
    return -1;
  }

  const std::vector<KMask>& domain(int w) const { return domains_[w]; }

  // Assigns and propagates; false on contradiction.
  bool assign(Colors& c, int w, KMask v) const {
    if (!admissible(c, w, v)) return false;
    c[w] = static_cast<int>(v);
    return propagate(c);
  }

  Assignment assignment(const Colors& c) const {
    Assignment a{n_, {}};
    for (int w = n_; w < W_; ++w) a.masks.push_back(static_cast<KMask>(c[w]));
    return a;
  }

  const Polytope& polytope() const { return P_; }
  const std::optional<SymmetryAction>& action() const { return act_; }

 private:
  void setup_restriction() {
    const Polytope& P5 = hyperglue::polytope(5);
    std::map<LorentzVector, int> index5;
    for (int w = 0; w < static_cast<int>(P5.wall_count()); ++w) index5[P5.normal(w)] = w;
    q5_.assign(W_, -1);
    for (int w = 0; w < W_; ++w) {
      const LorentzVector& u = P_.normal(w);
      if (u[0] != 0) continue;
      std::vector<Integer> e(u.entries().begin() + 1, u.entries().end());
      const auto it = index5.find(LorentzVector(e));
      if (it == index5.end()) throw std::logic_error("restriction: wall has no 5-dimensional counterpart");
      q5_[w] = it->second;
    }
    std::vector<int> to6(P5.wall_count(), -1);
    for (int w = 0; w < W_; ++w)
      if (q5_[w] >= 0) to6[q5_[w]] = w;
    if (std::count(to6.begin(), to6.end(), -1)) throw std::logic_error("restriction: walls of P_5 missing in P_6");
    if (opt_.restriction_proper) {
      q5_by_wall_.resize(W_);
      for (WallMask s : maximal_finite_supports(P5)) {
        WallMask m = 0;
        for (int w5 = 0; w5 < static_cast<int>(P5.wall_count()); ++w5)
          if (s >> w5 & 1) m |= WallMask(1) << to6[w5];
        q5_constraints_.push_back(m);
        for (int w = 0; w < W_; ++w)
          if (m >> w & 1) q5_by_wall_[w].push_back(static_cast<int>(q5_constraints_.size() - 1));
      }
    }
    if (opt_.restriction_seed) {
      const Assignment& s = *opt_.restriction_seed;
      if (s.n != 5 || s.masks.size() != P5.noncoordinate_count())
        throw std::invalid_argument("restriction seed must be a Q_5 assignment");
      seed_.assign(W_, -1);
      for (int w = n_; w < W_; ++w)
        if (q5_[w] >= 0) seed_[w] = static_cast<int>(s.masks[q5_[w] - 5]);
    }
  }

  void setup_domains() {
    domains_.resize(W_);
    const KMask values = KMask(1) << n_;
    for (int w = n_; w < W_; ++w) {
      std::vector<KMask> forbidden = opt_.forbidden;
      if (auto it = opt_.forbidden_at.find(w); it != opt_.forbidden_at.end())
        forbidden.insert(forbidden.end(), it->second.begin(), it->second.end());
      for (KMask v = 1; v < values; ++v) {
        if (std::find(forbidden.begin(), forbidden.end(), v) != forbidden.end()) continue;
        if (!seed_.empty() && seed_[w] >= 0 && (v >> 1) != static_cast<KMask>(seed_[w])) continue;
        domains_[w].push_back(v);
      }
    }
  }

  bool admissible(const Colors& c, int w, KMask v) const {
    if (!std::binary_search(domains_[w].begin(), domains_[w].end(), v)) return false;
    auto check = [&](WallMask s, bool shifted) {
      std::vector<KMask> cols;
      for (int u = 0; u < W_; ++u) {
        if (!(s >> u & 1)) continue;
        const int col = u == w ? static_cast<int>(v) : c[u];
        if (col < 0) continue;
        cols.push_back(shifted ? static_cast<KMask>(col) >> 1 : static_cast<KMask>(col));
      }
      return independent(std::move(cols));
    };
    for (int ci : by_wall_[w])
      if (!check(constraints_[ci], false)) return false;
    if (!q5_by_wall_.empty())
      for (int ci : q5_by_wall_[w])
        if (!check(q5_constraints_[ci], true)) return false;
    return true;
  }

  // Forces colours along pi-orbits until nothing changes.
  bool propagate(Colors& c) const {
    if (!act_) return true;
    while (true) {
      Echelon fwd, bwd;
      for (int u = 0; u < W_; ++u) {
        if (c[u] < 0 || c[pi_[u]] < 0) continue;
        const std::uint32_t x = c[u], y = c[pi_[u]];
        fwd.add(x << n_ | y);
        bwd.add(y << n_ | x);
      }
      const std::uint32_t low = (1u << n_) - 1;
      for (auto r : fwd.rows)
        if (!(r >> n_)) return false;  // not a function
      for (auto r : bwd.rows)
        if (!(r >> n_)) return false;  // not injective
      bool changed = false;
      for (int u = 0; u < W_ && !changed; ++u) {
        if (c[u] < 0) continue;
        for (int dir = 0; dir < 2 && !changed; ++dir) {
          const int target = dir == 0 ? pi_[u] : pi_inv_[u];
          if (c[target] >= 0) continue;
          const std::uint32_t r = (dir == 0 ? fwd : bwd).reduce(static_cast<std::uint32_t>(c[u]) << n_);
          if (r >> n_) continue;  // outside the known part of the map
          const KMask v = r & low;
          if (!admissible(c, target, v)) return false;
          c[target] = static_cast<int>(v);
          changed = true;
        }
      }
      if (!changed) return true;
    }
  }

  const SearchOptions& opt_;
  const Polytope& P_;
  int n_;
  int W_ = 0;
  std::vector<WallMask> constraints_;
  std::vector<std::vector<int>> by_wall_;
  std::optional<SymmetryAction> act_;
  std::vector<int> pi_, pi_inv_;
  std::vector<int> q5_, seed_;
  std::vector<WallMask> q5_constraints_;
  std::vector<std::vector<int>> q5_by_wall_;
  std::vector<std::vector<KMask>> domains_;
  std::vector<int> order_;
};

struct TaskResult {
  std::vector<PairingCode> codes;
  SearchStats stats;
};

class Runner {
 public:
  Runner(const Engine& e, const SearchOptions& o, std::atomic<std::uint64_t>& nodes, std::atomic<bool>& stop)
      : e_(e), opt_(o), nodes_(nodes), stop_(stop) {}

  void leaf(const Colors& c, TaskResult& out) const {
    ++out.stats.leaves;
    const auto sys = SidePairingSystem::expand(e_.assignment(c));
    if (opt_.verify_leaves && !check_proper(sys, 1).manifold())
      throw std::logic_error("search: colour pruning admitted an improper system " + sys.code().str());
    ++out.stats.proper;
    if (e_.action()) {
      if (!induced_tile_map(sys, *e_.action()))
        throw std::logic_error("search: propagation admitted a non-equivariant system " + sys.code().str());
      if (opt_.verify_leaves && !check_equivariance(sys, *opt_.sigma))
        throw std::logic_error("search: equivariance routes disagree on " + sys.code().str());
      ++out.stats.equivariant;
      if (opt_.require_free) {
        if (!check_free(sys, *e_.action())) return;
        ++out.stats.free;
      }
    }
    out.codes.push_back(sys.code());
  }

  // False when stopped by the budget.
  bool dfs(const Colors& c, TaskResult& out) const {
    if (stop_) return false;
    const int w = e_.next_wall(c);
    if (w < 0) {
      leaf(c, out);
      return true;
    }
    for (KMask v : e_.domain(w)) {
      const auto count = ++nodes_;
      ++out.stats.nodes;
      if (opt_.max_nodes && count > opt_.max_nodes) {
        stop_ = true;
        return false;
      }
      Colors next = c;
      if (!e_.assign(next, w, v)) continue;
      if (!dfs(next, out)) return false;
    }
    return true;
  }

  void prefixes(const Colors& c, std::vector<int>& choice, int depth, std::vector<Prefix>& out) const {
    const int w = e_.next_wall(c);
    if (w < 0 || depth == 0) {
      out.push_back({choice, c, w < 0});
      return;
    }
    const auto& dom = e_.domain(w);
    for (std::size_t i = 0; i < dom.size(); ++i) {
      Colors next = c;
      if (!e_.assign(next, w, dom[i])) continue;
      choice.push_back(static_cast<int>(i));
      prefixes(next, choice, depth - 1, out);
      choice.pop_back();
    }
  }

 private:
  const Engine& e_;
  const SearchOptions& opt_;
  std::atomic<std::uint64_t>& nodes_;
  std::atomic<bool>& stop_;
};

nlohmann::json stats_json(const SearchStats& s) {
  return {{"nodes", s.nodes}, {"leaves", s.leaves}, {"proper", s.proper}, {"equivariant", s.equivariant}, {"free", s.free}};
}

SearchStats stats_from(const nlohmann::json& j) {
  return {j.at("nodes"), j.at("leaves"), j.at("proper"), j.at("equivariant"), j.at("free")};
}

void add(SearchStats& a, const SearchStats& b) {
  a.nodes += b.nodes;
  a.leaves += b.leaves;
  a.proper += b.proper;
  a.equivariant += b.equivariant;
  a.free += b.free;
}

void write_checkpoint(const SearchOptions& o, const std::vector<Prefix>& tasks, std::size_t done,
                      const std::vector<PairingCode>& codes, const SearchStats& stats, std::uint64_t nodes) {
  nlohmann::json j;
  j["format"] = "hyperglue-search-checkpoint";
  j["version"] = 1;
  j["fingerprint"] = options_fingerprint(o);
  j["split_depth"] = o.split_depth;
  j["tasks_total"] = tasks.size();
  j["tasks_done"] = done;
  j["last_exhausted_prefix"] = done ? nlohmann::json(tasks[done - 1].choices) : nlohmann::json::array();
  j["nodes"] = nodes;
  j["stats"] = stats_json(stats);
  j["codes"] = nlohmann::json::array();
  for (const auto& c : codes) j["codes"].push_back(c.str());
  const std::string tmp = o.checkpoint_path + ".tmp";
  {
    std::ofstream f(tmp);
    if (!f) throw SearchError("cannot write checkpoint " + tmp);
    f << j.dump(2) << "\n";
  }
  std::filesystem::rename(tmp, o.checkpoint_path);
}

}  // namespace

std::string options_fingerprint(const SearchOptions& o) {
  std::ostringstream s;
  s << "n=" << o.n << ";sigma=" << (o.sigma ? o.sigma->str() : "none") << ";free=" << o.require_free;
  s << ";seed=";
  if (o.restriction_seed) s << encode(*o.restriction_seed).str();
  s << ";rproper=" << o.restriction_proper << ";forbidden=";
  auto f = o.forbidden;
  std::sort(f.begin(), f.end());
  for (auto v : f) s << v << ",";
  for (const auto& [w, vs] : o.forbidden_at) {
    auto g = vs;
    std::sort(g.begin(), g.end());
    s << ";at" << w << "=";
    for (auto v : g) s << v << ",";
  }
  s << ";split=" << o.split_depth;
  const std::string text = s.str();
  boost::crc_32_type crc;
  crc.process_bytes(text.data(), text.size());
  std::ostringstream hex;
  hex << std::hex << std::setw(8) << std::setfill('0') << crc.checksum();
  return hex.str();
}

SearchResult search(const SearchOptions& o) {
  const Engine engine(o);
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop{false};
  const Runner runner(engine, o, nodes, stop);

  std::vector<Prefix> tasks;
  const Colors root = engine.root();
  if (!root.empty()) {
    std::vector<int> choice;
    runner.prefixes(root, choice, std::max(0, o.split_depth), tasks);
  }

  SearchResult result;
  result.tasks_total = tasks.size();
  std::size_t start = 0;
  if (o.resume && !o.checkpoint_path.empty() && std::filesystem::exists(o.checkpoint_path)) {
    std::ifstream f(o.checkpoint_path);
    nlohmann::json j;
    try {
      f >> j;
    } catch (const nlohmann::json::exception& e) {
      throw SearchError(std::string("unreadable checkpoint: ") + e.what());
    }
    if (j.value("fingerprint", "") != options_fingerprint(o) || j.value("tasks_total", 0ul) != tasks.size())
      throw SearchError("checkpoint " + o.checkpoint_path + " belongs to a different search");
    start = j.at("tasks_done");
    for (const auto& c : j.at("codes")) result.codes.emplace_back(o.n, c.get<std::string>());
    result.stats = stats_from(j.at("stats"));
    nodes = j.at("nodes").get<std::uint64_t>();
  }

  std::vector<TaskResult> results(tasks.size());
  std::vector<char> finished(tasks.size(), 0);
  std::size_t done = start;
  std::mutex m;
  std::atomic<std::size_t> next{start};
  std::exception_ptr error;

  auto publish = [&] {
    // Extend the exhausted prefix; the caller holds m.
    std::size_t before = done;
    while (done < tasks.size() && finished[done]) {
      result.codes.insert(result.codes.end(), results[done].codes.begin(), results[done].codes.end());
      SearchStats s = results[done].stats;
      s.nodes = 0;  // counted globally
      add(result.stats, s);
      ++done;
    }
    if (done != before && !o.checkpoint_path.empty())
      write_checkpoint(o, tasks, done, result.codes, result.stats, nodes);
  };

  auto worker = [&] {
    try {
      while (!stop) {
        const std::size_t t = next++;
        if (t >= tasks.size()) return;
        TaskResult r;
        bool ok = true;
        if (tasks[t].leaf) runner.leaf(tasks[t].colors, r);
        else ok = runner.dfs(tasks[t].colors, r);
        std::lock_guard lock(m);
        if (!ok) return;
        results[t] = std::move(r);
        finished[t] = 1;
        publish();
      }
    } catch (...) {
      std::lock_guard lock(m);
      if (!error) error = std::current_exception();
      stop = true;
    }
  };

  const unsigned threads = std::max(1u, o.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);

  result.tasks_done = done;
  result.complete = done == tasks.size();
  result.stats.nodes = nodes.load();
  if (!o.checkpoint_path.empty()) write_checkpoint(o, tasks, done, result.codes, result.stats, nodes);
  return result;
}

Assignment restrict_to_q5(const Assignment& a6) {
  if (a6.n != 6) throw std::invalid_argument("restrict_to_q5: needs a Q_6 assignment");
  const Polytope& P6 = polytope(6);
  const Polytope& P5 = polytope(5);
  std::map<LorentzVector, int> index5;
  for (int w = 0; w < static_cast<int>(P5.wall_count()); ++w) index5[P5.normal(w)] = w;
  Assignment a5{5, std::vector<KMask>(P5.noncoordinate_count(), 0)};
  for (int w = 6; w < static_cast<int>(P6.wall_count()); ++w) {
    const LorentzVector& u = P6.normal(w);
    if (u[0] != 0) continue;
    std::vector<Integer> e(u.entries().begin() + 1, u.entries().end());
    a5.masks.at(index5.at(LorentzVector(e)) - 5) = a6.masks[w - 6] >> 1;
  }
  return a5;
}

StagedSearchResult staged_search(const LorentzMatrix& sigma6, const LorentzMatrix& sigma5, SearchOptions base) {
  StagedSearchResult out;
  SearchOptions s5 = base;
  s5.n = 5;
  s5.sigma = sigma5;
  s5.require_free = false;
  s5.restriction_seed.reset();
  s5.restriction_proper = false;
  s5.forbidden_at.clear();
  if (!base.checkpoint_path.empty()) s5.checkpoint_path = base.checkpoint_path + ".q5";
  const SearchResult first = search(s5);
  out.seeds = first.codes;
  add(out.stats, first.stats);
  out.complete = first.complete;
  for (std::size_t i = 0; i < out.seeds.size() && out.complete; ++i) {
    SearchOptions s6 = base;
    s6.n = 6;
    s6.sigma = sigma6;
    s6.restriction_seed = decode(out.seeds[i]);
    if (!base.checkpoint_path.empty()) s6.checkpoint_path = base.checkpoint_path + ".seed" + std::to_string(i);
    const SearchResult r = search(s6);
    add(out.stats, r.stats);
    out.complete = out.complete && r.complete;
    out.extensions.push_back(r.codes);
    out.codes.insert(out.codes.end(), r.codes.begin(), r.codes.end());
  }
  std::sort(out.codes.begin(), out.codes.end());
  out.codes.erase(std::unique(out.codes.begin(), out.codes.end()), out.codes.end());
  return out;
}

}  // namespace hyperglue
