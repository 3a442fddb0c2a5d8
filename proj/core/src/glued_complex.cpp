#include "hyperglue/glued_complex.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

namespace hyperglue {

namespace {

KMask reduce(KMask x, const std::vector<KMask>& basis) {
  for (KMask b : basis) {
    const KMask high = KMask(1) << (31 - std::countl_zero(b));
    if (x & high) x ^= b;
  }
  return x;
}

// Echelon basis with distinct leading bits; reduce() then yields a canonical
// representative of each coset.
std::vector<KMask> span_basis(const std::vector<KMask>& vs) {
  std::vector<KMask> basis;
  for (KMask v : vs) {
    v = reduce(v, basis);
    if (!v) continue;
    const KMask high = KMask(1) << (31 - std::countl_zero(v));
    for (KMask& b : basis)
      if (b & high) b ^= v;
    basis.push_back(v);
    std::sort(basis.begin(), basis.end(), std::greater<>());
  }
  return basis;
}

int incidence(const Polytope& p, int f, int g) {
  for (const auto& [h, s] : p.face(f).boundary)
    if (h == g) return s;
  throw std::logic_error("missing incidence");
}

}  // namespace

TileCellModel TileCellModel::build(const Polytope& p, bool truncated) {
  if (!p.has_face_lattice()) throw std::invalid_argument("cell model needs the face lattice");
  TileCellModel m;
  m.truncated = truncated;
  const int nf = static_cast<int>(p.faces().size());
  m.face_cell_.assign(nf, -1);
  m.cut_cell_.assign(nf, {});
  const auto ideal = p.ideal_vertices();
  auto contains = [&](int f, int v) {
    const auto& vs = p.face(f).vertices;
    return std::binary_search(vs.begin(), vs.end(), v);
  };
  for (int f = 0; f < nf; ++f) {
    const Face& F = p.face(f);
    if (F.ideal && truncated) continue;
    m.face_cell_[f] = static_cast<int>(m.cells.size());
    m.cells.push_back({F.dim, f, -1, F.ideal, {}});
    if (!truncated || F.dim == 0) continue;
    for (int v : ideal) {
      if (!contains(f, v)) continue;
      m.cut_cell_[f].emplace_back(v, static_cast<int>(m.cells.size()));
      m.cells.push_back({F.dim - 1, f, v, false, {}});
    }
  }
  // t(v, F) orients the link of v inside F consistently with the edge ends.
  auto t = [&](int v, int f) { return p.face(f).dim == 1 ? incidence(p, f, v) : 1; };
  for (auto& c : m.cells) {
    const Face& F = p.face(c.face);
    if (c.cusp < 0) {
      for (const auto& [g, s] : F.boundary) {
        if (truncated && p.face(g).ideal) continue;
        c.boundary.emplace_back(m.face_cell_[g], s);
      }
      if (truncated && F.dim >= 1)
        for (const auto& [v, cell] : m.cut_cell_[c.face]) c.boundary.emplace_back(cell, t(v, c.face));
    } else {
      for (const auto& [g, s] : F.boundary) {
        const Face& G = p.face(g);
        if (G.ideal || G.dim < 1 || !contains(g, c.cusp)) continue;
        c.boundary.emplace_back(*m.find(g, c.cusp), -s * t(c.cusp, g) * t(c.cusp, c.face));
      }
    }
  }
  for (const auto& c : m.cells) {
    std::map<int, int> acc;
    for (const auto& [b, s] : c.boundary)
      for (const auto& [bb, ss] : m.cells[b].boundary) acc[bb] += s * ss;
    for (const auto& [_, v] : acc)
      if (v) throw std::logic_error("truncated cell model: boundary of boundary is not zero");
  }
  return m;
}

std::optional<int> TileCellModel::find(int face, int cusp) const {
  if (face < 0 || face >= static_cast<int>(face_cell_.size())) return std::nullopt;
  if (cusp < 0) {
    if (face_cell_[face] < 0) return std::nullopt;
    return face_cell_[face];
  }
  for (const auto& [v, cell] : cut_cell_[face])
    if (v == cusp) return cell;
  return std::nullopt;
}

std::vector<std::size_t> GluedComplex::cell_counts() const {
  std::vector<std::size_t> c(n_ + 1, 0);
  for (const auto& cell : cells_)
    if (!cell.at_infinity) ++c[cell.dim];
  return c;
}

long GluedComplex::euler_characteristic() const {
  long chi = 0;
  for (const auto& cell : cells_)
    if (!cell.at_infinity) chi += cell.dim % 2 ? -1 : 1;
  return chi;
}

std::size_t GluedComplex::cells_at_infinity() const {
  return static_cast<std::size_t>(
      std::count_if(cells_.begin(), cells_.end(), [](const Cell& c) { return c.at_infinity; }));
}

KMask tile_image_by_folding(const SidePairingSystem& sys, const LorentzMatrix& sigma, KMask x) {
  const Polytope& P = sys.polytope();
  const LorentzVector p = sigma * (LorentzMatrix::sign_change(P.dimension() + 1, x) * P.interior_point());
  const FoldResult fold = fold_to_chamber(p, P.normals());
  KMask label = 0;
  for (int u : fold.word) label ^= sys.color(u);
  return label;
}

GluedComplex build_glued(const SidePairingSystem& sys, const SymmetryAction* act, bool truncated) {
  const Polytope& P = sys.polytope();
  const int n = P.dimension();
  const KMask labels = KMask(1) << n;
  GluedComplex gc;
  gc.n_ = n;
  gc.system_ = std::make_shared<const SidePairingSystem>(sys);
  if (act) gc.action_ = *act;
  gc.model_ = std::make_shared<const TileCellModel>(TileCellModel::build(P, truncated));
  const TileCellModel& model = *gc.model_;
  const int nm = static_cast<int>(model.cells.size());

  std::vector<std::vector<KMask>> spans(nm);
  for (int c = 0; c < nm; ++c) {
    const WallMask supp = P.face(model.cells[c].face).support;
    std::vector<KMask> cols;
    for (int w = 0; w < static_cast<int>(P.wall_count()); ++w)
      if (supp >> w & 1) cols.push_back(sys.color(w));
    spans[c] = span_basis(cols);
  }

  // Cells of M.
  std::vector<GluedComplex::Cell> cells;
  std::map<std::pair<int, KMask>, int> index;
  for (int c = 0; c < nm; ++c)
    for (KMask x = 0; x < labels; ++x) {
      if (reduce(x, spans[c]) != x) continue;
      index[{c, x}] = static_cast<int>(cells.size());
      cells.push_back({model.cells[c].dim, x, c, model.cells[c].at_infinity, model.cells[c].cusp >= 0});
    }
  auto cell_of = [&](int c, KMask x) { return index.at({c, reduce(x, spans[c])}); };

  // Orbit representatives under sigma.
  std::vector<int> rep(cells.size());
  std::vector<int> rep_sign(cells.size(), 1);
  for (std::size_t i = 0; i < cells.size(); ++i) rep[i] = static_cast<int>(i);
  gc.tiles_ = static_cast<int>(labels);
  if (act) {
    const auto tm = induced_tile_map(sys, *act);
    if (!tm) throw std::invalid_argument("build_quotient: system is not equivariant under sigma");
    for (KMask x = 0; x < labels; ++x)
      if (tile_image_by_folding(sys, act->sigma(), x) != tm->apply(x))
        throw std::logic_error("build_quotient: tile permutation disagrees with the folded image");
    auto t = [&](int v, int f) { return P.face(f).dim == 1 ? incidence(P, f, v) : 1; };
    std::vector<std::pair<int, int>> image(nm);
    for (int c = 0; c < nm; ++c) {
      const auto& mc = model.cells[c];
      const int f2 = act->face_image(mc.face);
      int s = act->face_sign(mc.face);
      std::optional<int> target;
      if (mc.cusp < 0) {
        target = model.find(f2);
      } else {
        const int v2 = act->face_image(mc.cusp);
        target = model.find(f2, v2);
        s *= t(mc.cusp, mc.face) * t(v2, f2);
      }
      if (!target) throw std::logic_error("build_quotient: symmetry image of a cell is missing");
      image[c] = {*target, s};
    }
    std::vector<char> done(cells.size(), 0);
    std::size_t top_orbits = 0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (done[i]) continue;
      int cur = static_cast<int>(i), sign = 1;
      std::size_t len = 0;
      do {
        if (done[cur]) throw std::logic_error("build_quotient: sigma orbits overlap");
        done[cur] = 1;
        rep[cur] = static_cast<int>(i);
        rep_sign[cur] = sign;
        const auto [c2, s] = image[cells[cur].model_cell];
        cur = cell_of(c2, tm->apply(cells[cur].label));
        sign *= s;
        ++len;
      } while (cur != static_cast<int>(i));
      if (!cells[i].at_infinity && sign != 1)
        throw std::invalid_argument("build_quotient: sigma reverses a cell onto itself (not free)");
      if (cells[i].dim == n) {
        ++top_orbits;
        gc.tiles_ = static_cast<int>(top_orbits);
      }
      (void)len;
    }
  }

  // Quotient cells in the order of their representatives.
  std::vector<int> qid(cells.size(), -1);
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (rep[i] == static_cast<int>(i)) {
      qid[i] = static_cast<int>(gc.cells_.size());
      gc.cells_.push_back(cells[i]);
    }
  gc.boundary_.resize(gc.cells_.size());
  std::vector<int> top_incidences(gc.cells_.size(), 0);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (rep[i] != static_cast<int>(i)) continue;
    std::map<int, long> acc;
    for (const auto& [b, s] : model.cells[cells[i].model_cell].boundary) {
      const int m = cell_of(b, cells[i].label);
      const int q = qid[rep[m]];
      acc[q] += static_cast<long>(s) * rep_sign[m];
      if (cells[i].dim == n) ++top_incidences[q];
    }
    for (const auto& [q, v] : acc)
      if (v) gc.boundary_[qid[i]].emplace_back(q, v);
  }
  for (std::size_t q = 0; q < gc.cells_.size(); ++q) {
    const auto& c = gc.cells_[q];
    if (c.dim != n - 1 || c.at_infinity) continue;
    const int expected = c.on_boundary ? 1 : 2;
    if (top_incidences[q] != expected)
      throw std::logic_error("glued complex: a codimension-1 cell meets " + std::to_string(top_incidences[q]) +
                             " top cells");
  }
  return gc;
}

GluedComplex build_quotient(const SidePairingSystem& sys, const SymmetryAction* act) {
  return build_glued(sys, act, false);
}

}  // namespace hyperglue
