#include "hyperglue/symmetry.hpp"

#include <bit>
#include <map>
#include <set>
#include <stdexcept>

namespace hyperglue {

namespace {

int sign_of(const std::vector<LorentzVector>& xs, const std::vector<LorentzVector>& ys) {
  std::vector<std::vector<Integer>> m;
  for (const auto& x : xs) {
    std::vector<Integer> row;
    for (const auto& y : ys) row.push_back(euclidean_product(x, y));
    m.push_back(std::move(row));
  }
  return sign(determinant(std::move(m)));
}

// Canonical representative of x modulo the span of vs.
KMask reduce(KMask x, const std::vector<KMask>& basis) {
  for (KMask b : basis) {
    const KMask high = KMask(1) << (31 - std::countl_zero(b));
    if (x & high) x ^= b;
  }
  return x;
}

// Basis with distinct leading bits, sorted by decreasing leading bit.
std::vector<KMask> span_basis(std::vector<KMask> vs) {
  std::vector<KMask> basis;
  for (KMask v : vs) {
    v = reduce(v, basis);
    if (!v) continue;
    basis.push_back(v);
    std::sort(basis.begin(), basis.end(), [](KMask a, KMask b) { return std::countl_zero(a) < std::countl_zero(b); });
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (i == j) continue;
        const KMask high = KMask(1) << (31 - std::countl_zero(basis[j]));
        if (basis[i] & high) basis[i] ^= basis[j];
      }
  }
  return basis;
}

}  // namespace

const LorentzMatrix& builtin_sigma(int n) {
  static const LorentzMatrix s6 = LorentzMatrix::from_rows(std::vector<std::vector<long long>>{{1, 0, 0, 0, 0, 0, 0},
                                                            {0, 1, 0, 0, 1, 0, -1},
                                                            {0, 0, 0, 0, 0, 1, 0},
                                                            {0, -1, 0, -1, 0, 0, 1},
                                                            {0, 0, 1, 0, 0, 0, 0},
                                                            {0, 0, 0, -1, -1, 0, 1},
                                                            {0, -1, 0, -1, -1, 0, 2}});
  static const LorentzMatrix s5 = LorentzMatrix::from_rows(std::vector<std::vector<long long>>{{1, 0, 0, 1, 0, -1},
                                                            {0, 0, 0, 0, 1, 0},
                                                            {-1, 0, -1, 0, 0, 1},
                                                            {0, 1, 0, 0, 0, 0},
                                                            {0, 0, -1, -1, 0, 1},
                                                            {-1, 0, -1, -1, 0, 2}});
  if (n == 6) return s6;
  if (n == 5) return s5;
  throw std::invalid_argument("no built-in symmetry for this dimension");
}

SymmetryAction SymmetryAction::decompose(const Polytope& p, const LorentzMatrix& sigma) {
  const int n = p.dimension();
  if (sigma.size() != static_cast<std::size_t>(n + 1)) throw std::invalid_argument("symmetry has the wrong size");
  if (!is_lorentzian_integral(sigma)) throw std::invalid_argument("symmetry is not an integral Lorentzian matrix");
  if (!p.has_face_lattice()) throw std::invalid_argument("symmetry needs the face lattice");
  SymmetryAction a;
  a.polytope_ = &p;
  a.sigma_ = sigma;
  const LorentzVector sc = sigma * p.interior_point();
  if (sc.time() <= 0) throw std::invalid_argument("symmetry exchanges the sheets of the hyperboloid");
  const FoldResult fold = fold_to_chamber(sc, p.normals());
  a.word_ = fold.word;
  LorentzMatrix h = sigma;
  for (int u : fold.word) h = LorentzMatrix::reflection(p.normal(u)) * h;
  a.h_ = h;
  std::map<LorentzVector, int> index;
  for (int w = 0; w < static_cast<int>(p.wall_count()); ++w) index[p.normal(w)] = w;
  for (int w = 0; w < static_cast<int>(p.wall_count()); ++w) {
    const auto it = index.find(h * p.normal(w));
    if (it == index.end()) throw std::invalid_argument("symmetry does not preserve the tessellation by copies of P");
    a.wall_image_.push_back(it->second);
  }
  for (const Face& f : p.faces()) {
    WallMask img = 0;
    for (int w = 0; w < static_cast<int>(p.wall_count()); ++w)
      if (f.support >> w & 1) img |= WallMask(1) << a.wall_image_[w];
    const auto g = p.find_face(img);
    if (!g) throw std::logic_error("symmetry image of a face is missing");
    std::vector<LorentzVector> moved;
    for (const auto& b : f.basis) moved.push_back(h * b);
    const int s = sign_of(moved, p.face(*g).basis);
    if (s == 0) throw std::logic_error("symmetry degenerates a face");
    a.face_image_.push_back(*g);
    a.face_sign_.push_back(s);
  }
  return a;
}

KMask TileMap::apply(KMask x) const {
  KMask r = offset;
  for (int i = 0; i < n; ++i)
    if (x >> i & 1u) r ^= columns[i];
  return r;
}

TileMap TileMap::compose(const TileMap& o) const {
  TileMap r;
  r.n = n;
  for (int i = 0; i < n; ++i) r.columns[i] = apply(o.columns[i]) ^ offset;
  r.offset = apply(o.offset);
  return r;
}

TileMap TileMap::power(unsigned j) const {
  TileMap r;
  r.n = n;
  for (int i = 0; i < n; ++i) r.columns[i] = KMask(1) << i;
  for (unsigned k = 0; k < j; ++k) r = compose(r);
  return r;
}

bool TileMap::is_identity() const {
  if (offset) return false;
  for (int i = 0; i < n; ++i)
    if (columns[i] != (KMask(1) << i)) return false;
  return true;
}

std::optional<TileMap> induced_tile_map(const SidePairingSystem& sys, const SymmetryAction& act) {
  const Polytope& P = sys.polytope();
  const int n = P.dimension();
  TileMap m;
  m.n = n;
  for (int i = 0; i < n; ++i) m.columns[i] = sys.color(act.wall_image(i));
  for (int u = 0; u < static_cast<int>(P.wall_count()); ++u) {
    KMask image = 0;
    for (int i = 0; i < n; ++i)
      if (sys.color(u) >> i & 1u) image ^= m.columns[i];
    if (image != sys.color(act.wall_image(u))) return std::nullopt;
  }
  for (int u : act.fold_word()) m.offset ^= sys.color(u);
  return m;
}

bool check_equivariance(const SidePairingSystem& sys, const LorentzMatrix& sigma) {
  const LorentzMatrix inv = sigma.lorentz_inverse();
  for (const SideMap& s : sys.sides())
    if (!membership(sigma * s.map * inv, sys).member) return false;
  return true;
}

bool check_free(const SidePairingSystem& sys, const SymmetryAction& act) {
  const auto tm = induced_tile_map(sys, act);
  if (!tm) return false;
  const Polytope& P = sys.polytope();
  const int n = P.dimension();
  const KMask tiles = KMask(1) << n;
  std::vector<std::vector<KMask>> spans;
  for (const Face& f : P.faces()) {
    std::vector<KMask> cols;
    for (int w = 0; w < static_cast<int>(P.wall_count()); ++w)
      if (f.support >> w & 1) cols.push_back(sys.color(w));
    spans.push_back(span_basis(cols));
  }
  std::vector<int> image(P.faces().size());
  for (std::size_t f = 0; f < image.size(); ++f) image[f] = static_cast<int>(f);
  TileMap power = tm->power(0);
  for (unsigned j = 1; j <= 7; ++j) {
    power = tm->compose(power);
    for (std::size_t f = 0; f < image.size(); ++f) image[f] = act.face_image(image[f]);
    for (std::size_t f = 0; f < image.size(); ++f) {
      if (P.face(static_cast<int>(f)).ideal || image[f] != static_cast<int>(f)) continue;
      for (KMask x = 0; x < tiles; ++x)
        if (reduce(power.apply(x), spans[f]) == reduce(x, spans[f])) return false;
    }
  }
  return true;
}

std::optional<unsigned> induced_order(const SidePairingSystem& sys, const LorentzMatrix& sigma, unsigned cap) {
  LorentzMatrix p = sigma;
  for (unsigned j = 1; j <= cap; ++j) {
    if (membership(p, sys).member) return j;
    p = p * sigma;
  }
  return std::nullopt;
}

bool orientable(const SidePairingSystem& sys, const LorentzMatrix* sigma) {
  for (const SideMap& s : sys.sides())
    if (s.map.determinant() != 1) return false;
  if (sigma && sigma->determinant() != 1) return false;
  return true;
}

std::size_t cusp_count(const SidePairingSystem& sys, const SymmetryAction* act) {
  const auto classes = cusp_classes(sys);
  if (!act) return classes.size();
  const auto tm = induced_tile_map(sys, *act);
  if (!tm) throw std::invalid_argument("cusp_count: system is not equivariant");
  const Polytope& P = sys.polytope();
  // Label each (ideal vertex, tile) by its class, then merge classes along sigma.
  std::map<std::pair<int, KMask>, std::size_t> cls;
  {
    const int n = P.dimension();
    for (std::size_t c = 0; c < classes.size(); ++c) {
      const Face& vf = P.face(classes[c].ideal_vertex);
      std::vector<KMask> cols;
      for (int w = 0; w < static_cast<int>(P.wall_count()); ++w)
        if (vf.support >> w & 1) cols.push_back(sys.color(w));
      const auto basis = span_basis(cols);
      for (KMask x = 0; x < (KMask(1) << n); ++x)
        if (reduce(x, basis) == reduce(classes[c].tile, basis)) cls[{classes[c].ideal_vertex, x}] = c;
    }
  }
  std::vector<std::size_t> parent(classes.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [key, c] : cls) {
    const auto target = cls.at({act->face_image(key.first), tm->apply(key.second)});
    parent[find(c)] = find(target);
  }
  std::set<std::size_t> roots;
  for (std::size_t i = 0; i < parent.size(); ++i) roots.insert(find(i));
  return roots.size();
}

}  // namespace hyperglue
