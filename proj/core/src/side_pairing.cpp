#include "hyperglue/side_pairing.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

namespace hyperglue {

namespace {

KMask coordinate_support(const LorentzVector& u, int n) {
  KMask m = 0;
  for (int i = 0; i < n; ++i)
    if (u[i] != 0) m |= KMask(1) << i;
  return m;
}

std::string walls_str(WallMask m) {
  std::string s = "{";
  for (int w = 0; w < 64; ++w)
    if (m >> w & 1) s += (s.size() > 1 ? "," : "") + std::to_string(w);
  return s + "}";
}

std::size_t f2_rank(std::vector<KMask> v) {
  std::size_t r = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i]) continue;
    ++r;
    const KMask low = v[i] & (~v[i] + 1);
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (v[j] & low) v[j] ^= v[i];
  }
  return r;
}

// Exact small-entry matrices for cycle products; throws on overflow rather
// than rounding.
struct SmallMatrix {
  int size = 0;
  std::vector<long long> a;

  static SmallMatrix identity(int n) {
    SmallMatrix m{n, std::vector<long long>(std::size_t(n) * n, 0)};
    for (int i = 0; i < n; ++i) m.a[i * n + i] = 1;
    return m;
  }
  static SmallMatrix from(const LorentzMatrix& l) {
    const int n = static_cast<int>(l.size());
    SmallMatrix m{n, std::vector<long long>(std::size_t(n) * n)};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.a[i * n + j] = static_cast<long long>(l(i, j));
    return m;
  }
  SmallMatrix operator*(const SmallMatrix& o) const {
    SmallMatrix r{size, std::vector<long long>(a.size(), 0)};
    for (int i = 0; i < size; ++i)
      for (int k = 0; k < size; ++k) {
        const long long x = a[i * size + k];
        if (!x) continue;
        for (int j = 0; j < size; ++j) {
          long long p, s;
          if (__builtin_mul_overflow(x, o.a[k * size + j], &p) || __builtin_add_overflow(r.a[i * size + j], p, &s))
            throw std::overflow_error("cycle transformation overflows 64 bits");
          r.a[i * size + j] = s;
        }
      }
    return r;
  }
  std::vector<long long> apply(const std::vector<long long>& x) const {
    std::vector<long long> y(size, 0);
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) y[i] += a[i * size + j] * x[j];
    return y;
  }
  bool operator==(const SmallMatrix&) const = default;
};

std::vector<long long> small(const LorentzVector& v) {
  std::vector<long long> out;
  for (const auto& e : v.entries()) out.push_back(static_cast<long long>(e));
  return out;
}

}  // namespace

std::string to_string(FailureKind k) {
  switch (k) {
    case FailureKind::side_fixity: return "side";
    case FailureKind::ridge_cycle: return "ridge";
    case FailureKind::cusp_cycle: return "cusp";
    case FailureKind::face_cycle: return "face";
  }
  return "?";
}

bool ProperVerdict::has(FailureKind k) const {
  return std::any_of(failures.begin(), failures.end(), [k](const ProperFailure& f) { return f.kind == k; });
}

SidePairingSystem SidePairingSystem::expand(const Assignment& a) {
  SidePairingSystem sys;
  sys.polytope_ = &hyperglue::polytope(a.n);
  const Polytope& P = *sys.polytope_;
  const int n = a.n;
  if (a.masks.size() != P.noncoordinate_count()) throw CodeError("assignment has the wrong length");
  sys.assignment_ = a;
  for (int i = 0; i < n; ++i) sys.colors_.push_back(KMask(1) << i);
  for (KMask m : a.masks) {
    if (m >= (KMask(1) << n)) throw CodeError("mask outside the sign group");
    sys.colors_.push_back(m);
  }
  const KMask tiles = KMask(1) << n;
  for (int u = n; u < static_cast<int>(P.wall_count()); ++u) {
    const KMask supp = coordinate_support(P.normal(u), n);
    std::vector<int> lookup(tiles, -1);
    for (KMask t = 0; t < tiles; ++t) {
      if ((t & ~supp) != 0) continue;
      lookup[t] = static_cast<int>(sys.sides_.size());
      SideMap s;
      s.wall = u;
      s.tiles = t;
      s.k = sys.colors_[u];
      s.normal = apply_sign(t, P.normal(u));
      s.map = LorentzMatrix::reflection(s.normal) * LorentzMatrix::sign_change(n + 1, s.k);
      sys.sides_.push_back(std::move(s));
    }
    for (KMask t = 0; t < tiles; ++t) lookup[t] = lookup[t & supp];
    sys.side_of_.push_back(std::move(lookup));
  }
  for (auto& s : sys.sides_) s.partner = sys.side_index(s.wall, s.tiles ^ s.k);
  return sys;
}

int SidePairingSystem::side_index(int wall, KMask tile) const {
  const int n = dimension();
  if (wall < n) throw std::invalid_argument("coordinate walls are interior to Q_n");
  return side_of_.at(wall - n).at(tile);
}

std::optional<int> SidePairingSystem::find_side(const LorentzVector& normal) const {
  for (std::size_t i = 0; i < sides_.size(); ++i)
    if (sides_[i].normal == normal) return static_cast<int>(i);
  return std::nullopt;
}

ProperVerdict check_proper(const SidePairingSystem& sys, std::size_t max_failures) {
  const Polytope& P = sys.polytope();
  const int n = P.dimension();
  const KMask tiles = KMask(1) << n;
  ProperVerdict v;
  std::map<FailureKind, std::size_t> counts;
  auto fail = [&](FailureKind k, std::string w) {
    if (counts[k]++ < max_failures) v.failures.push_back({k, std::move(w)});
  };
  std::vector<WallMask> finite_supports;
  for (const Face& f : P.faces())
    if (!f.ideal) finite_supports.push_back(f.support);

  // (a) side fixity
  for (std::size_t i = 0; i < sys.sides().size(); ++i) {
    const SideMap& s = sys.sides()[i];
    if (s.partner != static_cast<int>(i)) continue;
    WallMask fixed = WallMask(1) << s.wall;
    for (int c = 0; c < n; ++c)
      if (s.k >> c & 1u) fixed |= WallMask(1) << c;
    for (WallMask f : finite_supports)
      if ((f & fixed) == fixed) {
        fail(FailureKind::side_fixity, "side " + s.normal.str() + " is paired to itself by k=" +
                                           std::to_string(s.k) + ", fixing the face on walls " + walls_str(fixed));
        break;
      }
  }

  // (b) ridge cycles
  std::vector<SmallMatrix> maps;
  for (const SideMap& s : sys.sides()) maps.push_back(SmallMatrix::from(s.map));
  const SmallMatrix I = SmallMatrix::identity(n + 1);
  for (int fid : P.faces_of_dimension(n - 2)) {
    const WallMask supp = P.face(fid).support;
    if (supp & ((WallMask(1) << n) - 1)) continue;  // ridge crosses a coordinate wall: interior to Q_n
    const int a = std::countr_zero(supp);
    const int b = 63 - std::countl_zero(supp);
    const KMask R = coordinate_support(P.normal(a), n) | coordinate_support(P.normal(b), n);
    std::vector<char> seen(std::size_t(tiles) * 2, 0);
    auto key = [&](KMask t, int wall) { return std::size_t(t) * 2 + (wall == b); };
    for (KMask t0 = 0; t0 < tiles; ++t0) {
      if ((t0 & ~R) || seen[key(t0, a)]) continue;
      KMask t = t0;
      int cur = a, other = b;
      SmallMatrix T = I;
      int steps = 0;
      do {
        seen[key(t, cur)] = 1;
        const SideMap& s = sys.sides()[sys.side_index(cur, t)];
        T = maps[s.partner] * T;
        t = (t ^ sys.color(cur)) & R;
        std::swap(cur, other);
        ++steps;
      } while (!(t == t0 && cur == a) && steps <= 16);
      if (steps != 4 || !(T == I)) {
        fail(FailureKind::ridge_cycle, "ridge on walls " + walls_str(supp) + " in tile " + std::to_string(t0) +
                                           ": cycle length " + std::to_string(steps) +
                                           (T == I ? "" : ", cycle transformation is not the identity"));
      }
    }
  }

  // (c) cusp cycles: every path of side maps between cusp points must carry
  // the primitive null vector exactly onto its image.
  for (int vid : P.ideal_vertices()) {
    const Face& vf = P.face(vid);
    const LorentzVector& nv = vf.basis.front();
    std::vector<char> seen(tiles, 0);
    for (KMask t0 = 0; t0 < tiles; ++t0) {
      if (seen[t0]) continue;
        const auto base = small(apply_sign(t0, nv));
      std::vector<std::pair<KMask, SmallMatrix>> stack{{t0, I}};
      seen[t0] = 1;
      bool ok = true;
      while (!stack.empty() && ok) {
        auto [t, M] = std::move(stack.back());
        stack.pop_back();
        for (int w = 0; w < static_cast<int>(P.wall_count()) && ok; ++w) {
          if (!(vf.support >> w & 1)) continue;
          KMask t2 = t ^ sys.color(w);
          SmallMatrix M2 = M;
          if (w >= n) M2 = maps[sys.sides()[sys.side_index(w, t)].partner] * M;
          if (M2.apply(base) != small(apply_sign(t2, nv))) {
            fail(FailureKind::cusp_cycle, "cusp " + nv.str() + " from tile " + std::to_string(t0) +
                                              " is not fixed by its cycle transformation");
            ok = false;
          }
          if (!seen[t2]) {
            seen[t2] = 1;
            stack.emplace_back(t2, std::move(M2));
          }
        }
      }
    }
  }

  // (d) colours around finite faces
  for (const Face& f : P.faces()) {
    if (f.ideal || f.support == 0) continue;
    std::vector<KMask> cols;
    for (int w = 0; w < static_cast<int>(P.wall_count()); ++w)
      if (f.support >> w & 1) cols.push_back(sys.color(w));
    if (f2_rank(cols) != cols.size())
      fail(FailureKind::face_cycle,
           "face on walls " + walls_str(f.support) + " has linearly dependent side colours");
  }
  return v;
}

LorentzMatrix word_product(const SidePairingSystem& sys, const std::vector<int>& word) {
  LorentzMatrix m = LorentzMatrix::identity(sys.dimension() + 1);
  for (int s : word) m = m * sys.sides().at(s).map;
  return m;
}

Membership membership(const LorentzMatrix& g, const SidePairingSystem& sys) {
  const Polytope& P = sys.polytope();
  const int n = P.dimension();
  Membership r;
  if (g.size() != static_cast<std::size_t>(n + 1)) throw std::invalid_argument("membership: matrix size");
  if (!is_lorentzian_integral(g)) {
    r.reason = "not an integral Lorentzian matrix";
    return r;
  }
  const LorentzVector& c = P.interior_point();
  const LorentzVector gc = g * c;
  if (gc.time() <= 0) {
    r.reason = "exchanges the sheets of the hyperboloid";
    return r;
  }
  const FoldResult fold = fold_to_chamber(gc, P.normals(), 100000);
  if (!(fold.point == c)) {
    r.reason = "g.c folds to a point other than c: g is not in the reflection group of P";
    return r;
  }
  LorentzMatrix gamma = LorentzMatrix::identity(n + 1);
  KMask t = 0;
  std::vector<int> word;
  for (int u : fold.word) {
    gamma = gamma * LorentzMatrix::reflection(P.normal(u));
    if (u >= n) word.push_back(sys.side_index(u, t));
    t ^= sys.color(u);
  }
  if (!(gamma == g)) {
    r.reason = "g differs from its fold word by a symmetry of P";
    return r;
  }
  if (t != 0) {
    r.reason = "g maps P to a tile labelled " + std::to_string(t) + ", not 0";
    return r;
  }
  r.member = true;
  r.word = std::move(word);
  return r;
}

std::vector<CuspClass> cusp_classes(const SidePairingSystem& sys) {
  const Polytope& P = sys.polytope();
  const int n = P.dimension();
  const KMask tiles = KMask(1) << n;
  std::vector<CuspClass> out;
  for (int vid : P.ideal_vertices()) {
    const Face& vf = P.face(vid);
    std::vector<char> seen(tiles, 0);
    for (KMask t0 = 0; t0 < tiles; ++t0) {
      if (seen[t0]) continue;
      CuspClass c{vid, t0, 0};
      std::vector<KMask> stack{t0};
      seen[t0] = 1;
      while (!stack.empty()) {
        const KMask t = stack.back();
        stack.pop_back();
        ++c.size;
        for (int w = 0; w < static_cast<int>(P.wall_count()); ++w) {
          if (!(vf.support >> w & 1)) continue;
          const KMask t2 = t ^ sys.color(w);
          if (!seen[t2]) {
            seen[t2] = 1;
            stack.push_back(t2);
          }
        }
      }
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace hyperglue
