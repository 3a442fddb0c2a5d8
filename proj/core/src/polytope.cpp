#include "hyperglue/polytope.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>

#include <boost/dynamic_bitset.hpp>

#include "hyperglue/coxeter.hpp"

namespace hyperglue {

namespace {

using VertexSet = boost::dynamic_bitset<>;

// Fraction-free row echelon form over Z; rows are kept primitive.
class IntegerEchelon {
 public:
  explicit IntegerEchelon(std::size_t cols) : cols_(cols) {}

  // Returns false (and leaves the state unchanged) if row is dependent.
  bool add(std::vector<Integer> row) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::size_t c = pivots_[r];
      if (row[c] == 0) continue;
      const Integer g = boost::multiprecision::gcd(row[c], rows_[r][c]);
      const Integer a = rows_[r][c] / g, b = row[c] / g;
      for (std::size_t j = 0; j < cols_; ++j) row[j] = a * row[j] - b * rows_[r][j];
    }
    std::size_t c = 0;
    while (c < cols_ && row[c] == 0) ++c;
    if (c == cols_) return false;
    make_primitive(row);
    rows_.push_back(std::move(row));
    pivots_.push_back(c);
    return true;
  }

  std::size_t rank() const { return rows_.size(); }

  std::vector<LorentzVector> kernel() const {
    // Back-substitute to a diagonal pivot pattern.
    auto m = rows_;
    for (std::size_t r = m.size(); r-- > 0;)
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (i == r || m[i][pivots_[r]] == 0) continue;
        const Integer g = boost::multiprecision::gcd(m[i][pivots_[r]], m[r][pivots_[r]]);
        const Integer a = m[r][pivots_[r]] / g, b = m[i][pivots_[r]] / g;
        for (std::size_t j = 0; j < cols_; ++j) m[i][j] = a * m[i][j] - b * m[r][j];
        make_primitive(m[i]);
      }
    Integer l = 1;
    for (std::size_t r = 0; r < m.size(); ++r) l = boost::multiprecision::lcm(l, m[r][pivots_[r]]);
    std::vector<LorentzVector> basis;
    for (std::size_t f = 0; f < cols_; ++f) {
      if (std::find(pivots_.begin(), pivots_.end(), f) != pivots_.end()) continue;
      std::vector<Integer> v(cols_);
      v[f] = l;
      for (std::size_t r = 0; r < m.size(); ++r) v[pivots_[r]] = -(l / m[r][pivots_[r]]) * m[r][f];
      basis.push_back(LorentzVector(std::move(v)).primitive());
    }
    return basis;
  }

 private:
  static void make_primitive(std::vector<Integer>& row) {
    Integer g = 0;
    for (const auto& x : row) g = boost::multiprecision::gcd(g, x);
    if (g > 1)
      for (auto& x : row) x /= g;
  }

  std::size_t cols_;
  std::vector<std::vector<Integer>> rows_;
  std::vector<std::size_t> pivots_;
};

std::vector<LorentzVector> integer_kernel(const std::vector<std::vector<Integer>>& rows, std::size_t cols) {
  IntegerEchelon e(cols);
  for (const auto& r : rows) e.add(r);
  return e.kernel();
}

std::vector<Integer> as_functional(const LorentzVector& u) {
  std::vector<Integer> r = u.entries();
  r.back() = -r.back();
  return r;
}

int sign_of_det(std::vector<std::vector<Integer>> m) { return sign(determinant(std::move(m))); }

bool wall_order(const LorentzVector& a, const LorentzVector& b) {
  if (a.time() != b.time()) return a.time() < b.time();
  return a < b;
}

struct RawVertex {
  LorentzVector point;
  WallMask support = 0;
  bool ideal = false;
};

// Depth-first search over n-subsets of walls whose pairwise products are 0
// (orthogonal) or -1 (tangent at infinity); other pairs cannot share a point.
void enumerate_vertices(const std::vector<LorentzVector>& normals, int n, std::map<LorentzVector, RawVertex>& out) {
  const int w = static_cast<int>(normals.size());
  std::vector<WallMask> compatible(w, 0);
  for (int i = 0; i < w; ++i)
    for (int j = 0; j < w; ++j) {
      if (i == j) continue;
      const Integer p = lorentz_product(normals[i], normals[j]);
      if (p == 0 || p == -1) compatible[i] |= WallMask(1) << j;
    }
  std::vector<int> chosen;
  auto leaf = [&](const IntegerEchelon& e) {
    const auto ker = e.kernel();
    if (ker.size() != 1) return;
    LorentzVector x = ker.front();
    if (lorentz_product(x, x) > 0) return;
    if (x.time() < 0) x = -x;
    if (x.time() == 0) return;
    WallMask support = 0;
    for (int i = 0; i < w; ++i) {
      const Integer p = lorentz_product(x, normals[i]);
      if (p > 0) return;
      if (p == 0) support |= WallMask(1) << i;
    }
    auto& v = out[x];
    v.point = x;
    v.support = support;
    v.ideal = lorentz_product(x, x) == 0;
  };
  auto rec = [&](auto&& self, int start, WallMask allowed, const IntegerEchelon& e) -> void {
    if (static_cast<int>(chosen.size()) == n) {
      leaf(e);
      return;
    }
    for (int i = start; i < w; ++i) {
      if (!(allowed >> i & 1)) continue;
      if (w - i < n - static_cast<int>(chosen.size())) break;
      IntegerEchelon next = e;
      if (!next.add(as_functional(normals[i]))) continue;
      chosen.push_back(i);
      self(self, i + 1, allowed & compatible[i], next);
      chosen.pop_back();
    }
  };
  rec(rec, 0, w >= 64 ? ~WallMask(0) : (WallMask(1) << w) - 1, IntegerEchelon(n + 1));
}

}  // namespace

std::vector<LorentzVector> lorentz_orthogonal_complement(std::span<const LorentzVector> rows) {
  if (rows.empty()) throw std::invalid_argument("orthogonal complement of an empty set");
  std::vector<std::vector<Integer>> m;
  for (const auto& r : rows) m.push_back(as_functional(r));
  return integer_kernel(m, rows.front().size());
}

LorentzVector apply_sign(KMask k, const LorentzVector& x) {
  LorentzVector r = x;
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    if (k >> i & 1u) r[i] = -r[i];
  return r;
}

std::optional<int> Polytope::find_face(WallMask support) const {
  const auto it = by_support_.find(support);
  if (it == by_support_.end()) return std::nullopt;
  return it->second;
}

std::vector<int> Polytope::faces_of_dimension(int d, bool include_ideal) const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(faces_.size()); ++i)
    if (faces_[i].dim == d && (include_ideal || !faces_[i].ideal)) out.push_back(i);
  return out;
}

std::vector<int> Polytope::finite_vertices() const { return faces_of_dimension(0, false); }

std::vector<int> Polytope::ideal_vertices() const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(faces_.size()); ++i)
    if (faces_[i].ideal) out.push_back(i);
  return out;
}

std::vector<std::size_t> Polytope::face_census() const {
  std::vector<std::size_t> c(n_ + 1, 0);
  for (const auto& f : faces_)
    if (!f.ideal) ++c[f.dim];
  return c;
}

WallMask Polytope::neighbours(int w) const {
  WallMask out = 0;
  for (const auto& f : faces_)
    if (!f.ideal && f.dim == n_ - 2 && (f.support >> w & 1)) out |= f.support & ~(WallMask(1) << w);
  return out;
}

Polytope build_P(int n) {
  const SimplexRealization s = simplex_roots(n);
  const auto vroots = s.vertex_roots();
  const auto orbit = vector_orbit(s.roots[s.v_index], vroots);

  // v, the vertex of the simplex opposite F_1, is fixed by Gamma_v and lies inside P_n.
  const auto vk = lorentz_orthogonal_complement(vroots);
  if (vk.size() != 1) throw std::logic_error("build_P: vertex of the simplex is not a point");
  LorentzVector v = vk.front();
  if (v.time() < 0) v = -v;

  const KMask all = (KMask(1) << n) - 1;
  std::vector<LorentzVector> normals;
  for (const auto& u : orbit) {
    const Integer p = lorentz_product(v, u);
    if (p == 0) throw std::logic_error("build_P: wall through the centre");
    // Outward for the cell around v, then moved into the positive orthant.
    normals.push_back(apply_sign(all, p > 0 ? -u : u));
  }

  Polytope P;
  P.n_ = n;
  std::vector<LorentzVector> coord, other;
  for (auto& u : normals) {
    if (lorentz_product(u, u) != 1) throw std::logic_error("build_P: wall normal of norm != 1");
    int nonzero = 0;
    for (int i = 0; i <= n; ++i) nonzero += u[i] != 0;
    if (nonzero == 1 && u.time() == 0) coord.push_back(u);
    else other.push_back(u);
  }
  if (static_cast<int>(coord.size()) != n) throw std::logic_error("build_P: coordinate walls missing");
  for (int i = 0; i < n; ++i) P.normals_.push_back(-LorentzVector::unit(n + 1, i));
  for (const auto& u : coord)
    if (std::find(P.normals_.begin(), P.normals_.end(), u) == P.normals_.end())
      throw std::logic_error("build_P: polytope not in the positive orthant");
  std::sort(other.begin(), other.end(), wall_order);
  for (auto& u : other) P.normals_.push_back(std::move(u));

  // Interior witness (1, 2, ..., n, t) with the least admissible t.
  LorentzVector c = LorentzVector::zero(n + 1);
  for (int i = 0; i < n; ++i) c[i] = i + 1;
  Integer t = 0;
  for (const auto& u : P.normals_) {
    if (u.time() <= 0) continue;
    Integer spatial = 0;
    for (int i = 0; i < n; ++i) spatial += c[i] * u[i];
    const Integer bound = spatial / u.time() + 1;
    if (bound > t) t = bound;
  }
  c[n] = t;
  while (lorentz_product(c, c) >= 0) c[n] += 1;
  for (const auto& u : P.normals_)
    if (lorentz_product(c, u) >= 0) throw std::logic_error("build_P: interior witness fails");
  P.interior_ = c;
  return P;
}

Polytope face_lattice(Polytope P) {
  const int n = P.n_;
  const int w = static_cast<int>(P.normals_.size());
  if (w > 64) throw std::invalid_argument("face_lattice: more than 64 walls");
  P.faces_.clear();
  P.by_support_.clear();

  std::map<LorentzVector, RawVertex> raw;
  enumerate_vertices(P.normals_, n, raw);
  std::vector<RawVertex> verts;
  for (auto& [_, v] : raw) verts.push_back(std::move(v));
  const std::size_t nv = verts.size();

  std::vector<VertexSet> on_wall(w, VertexSet(nv));
  for (std::size_t i = 0; i < nv; ++i)
    for (int j = 0; j < w; ++j)
      if (verts[i].support >> j & 1) on_wall[j].set(i);

  // Faces are the nonempty intersections of facet vertex sets.
  std::set<VertexSet> seen;
  std::vector<VertexSet> queue;
  VertexSet full(nv);
  full.set();
  seen.insert(full);
  queue.push_back(full);
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (int j = 0; j < w; ++j) {
      VertexSet t = queue[k] & on_wall[j];
      if (t.none()) continue;
      if (seen.insert(t).second) queue.push_back(std::move(t));
    }

  struct Proto {
    Face face;
    VertexSet set;
  };
  std::vector<Proto> protos;
  for (const auto& s : queue) {
    Proto pr;
    pr.set = s;
    WallMask support = ~WallMask(0);
    LorentzVector center = LorentzVector::zero(n + 1);
    for (std::size_t i = s.find_first(); i != VertexSet::npos; i = s.find_next(i)) {
      support &= verts[i].support;
      center = center + verts[i].point;
    }
    if (w < 64) support &= (WallMask(1) << w) - 1;
    Face& f = pr.face;
    f.support = s.count() == nv ? 0 : support;
    f.ideal = s.count() == 1 && verts[s.find_first()].ideal;
    if (f.support == 0) {
      for (int i = 0; i <= n; ++i) f.basis.push_back(LorentzVector::unit(n + 1, i));
    } else if (s.count() == 1) {
      f.basis.push_back(verts[s.find_first()].point);
    } else {
      std::vector<LorentzVector> rows;
      for (int j = 0; j < w; ++j)
        if (f.support >> j & 1) rows.push_back(P.normals_[j]);
      f.basis = lorentz_orthogonal_complement(rows);
    }
    f.dim = static_cast<int>(f.basis.size()) - 1;
    pr.face.center = center;
    protos.push_back(std::move(pr));
  }
  std::sort(protos.begin(), protos.end(), [](const Proto& a, const Proto& b) {
    if (a.face.dim != b.face.dim) return a.face.dim < b.face.dim;
    if (a.face.ideal != b.face.ideal) return !a.face.ideal;
    return a.face.support < b.face.support;
  });

  std::vector<int> vertex_face(nv, -1);
  for (int id = 0; id < static_cast<int>(protos.size()); ++id) {
    if (protos[id].face.dim == 0) vertex_face[protos[id].set.find_first()] = id;
  }
  for (int id = 0; id < static_cast<int>(protos.size()); ++id) {
    Face& f = protos[id].face;
    const VertexSet& s = protos[id].set;
    for (std::size_t i = s.find_first(); i != VertexSet::npos; i = s.find_next(i)) f.vertices.push_back(vertex_face[i]);
    std::sort(f.vertices.begin(), f.vertices.end());
    if (f.dim < 0 || (f.dim == 0) != (s.count() == 1) || static_cast<int>(s.count()) <= f.dim)
      throw std::logic_error("face_lattice: face span has the wrong dimension");
    if (P.by_support_.count(f.support)) throw std::logic_error("face_lattice: repeated support");
    P.by_support_[f.support] = id;
  }

  // Incidence sign [F:G] compares (outward direction from F towards G, basis of G)
  // with the basis of F.
  auto incidence = [&](const Face& F, const Face& G) {
    std::vector<LorentzVector> X{G.center - F.center};
    X.insert(X.end(), G.basis.begin(), G.basis.end());
    std::vector<std::vector<Integer>> m;
    for (const auto& x : X) {
      std::vector<Integer> row;
      for (const auto& y : F.basis) row.push_back(euclidean_product(x, y));
      m.push_back(std::move(row));
    }
    const int s = sign_of_det(std::move(m));
    if (s == 0) throw std::logic_error("face_lattice: degenerate incidence");
    return s;
  };
  for (int id = 0; id < static_cast<int>(protos.size()); ++id) {
    Face& F = protos[id].face;
    if (F.dim == 0) continue;
    for (int g = 0; g < static_cast<int>(protos.size()); ++g) {
      const Face& G = protos[g].face;
      if (G.dim != F.dim - 1) continue;
      if (!protos[g].set.is_proper_subset_of(protos[id].set)) continue;
      F.boundary.emplace_back(g, incidence(F, G));
    }
  }
  for (auto& pr : protos) P.faces_.push_back(std::move(pr.face));
  P.top_ = static_cast<int>(P.faces_.size()) - 1;
  if (P.faces_[P.top_].dim != n || P.faces_[P.top_].support != 0)
    throw std::logic_error("face_lattice: top face missing");

  for (const Face& F : P.faces_) {
    std::map<int, int> acc;
    for (const auto& [g, s] : F.boundary)
      for (const auto& [h, t] : P.faces_[g].boundary) acc[h] += s * t;
    for (const auto& [h, v] : acc)
      if (v != 0) throw std::logic_error("face_lattice: boundary of boundary is not zero");
  }
  return P;
}

const Polytope& polytope(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<const Polytope>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<const Polytope>(face_lattice(build_P(n)));
  return *slot;
}

std::vector<IdealVertex> ideal_vertices(const Polytope& p) {
  if (!p.has_face_lattice()) throw std::invalid_argument("ideal_vertices: face lattice not built");
  std::vector<IdealVertex> out;
  for (int id : p.ideal_vertices()) out.push_back({p.face(id).basis.front(), p.face(id).support});
  return out;
}

std::size_t TileComplex::tile_face_count() const {
  std::size_t c = 0;
  for (const auto& s : sides) c += s.tiles.size();
  return c;
}

TileComplex tile_complex(const Polytope& p) {
  const int n = p.dimension();
  if (n < 4 || n > 6) throw std::invalid_argument("tile_complex: n must lie in 4..6");
  TileComplex t;
  t.n = n;
  const KMask count = KMask(1) << n;
  for (KMask k = 0; k < count; ++k) {
    t.tiles.push_back(k);
    for (int i = 0; i < n; ++i)
      if (!(k >> i & 1u)) t.internal_gluings.push_back({k, k | (KMask(1) << i), i});
  }
  std::size_t expected = 0;
  for (int u = n; u < static_cast<int>(p.wall_count()); ++u) {
    KMask supp = 0;
    for (int i = 0; i < n; ++i)
      if (p.normal(u)[i] != 0) supp |= KMask(1) << i;
    expected += std::size_t(1) << std::popcount(supp);
    std::map<LorentzVector, std::vector<KMask>> groups;
    for (KMask k = 0; k < count; ++k) groups[apply_sign(k, p.normal(u))].push_back(k);
    for (auto& [normal, tiles] : groups) t.sides.push_back({normal, u, std::move(tiles)});
  }
  if (t.sides.size() != expected) throw std::logic_error("tile_complex: side count mismatch");
  static const std::map<int, std::size_t> known{{5, 72}, {6, 252}};
  if (auto it = known.find(n); it != known.end() && t.sides.size() != it->second)
    throw std::logic_error("tile_complex: side count mismatch");
  return t;
}

}  // namespace hyperglue
