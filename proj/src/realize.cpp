#include "reebinv/realize.hpp"

#include <algorithm>
#include <set>

namespace reebinv {

namespace {

// Odd so that a band through level 0 can be invariant under a half turn.
constexpr int kRing = 5;

using Ring = std::vector<int>;
using Tri = std::array<int, 3>;

// Annulus between two cyclic vertex lists, lower below upper, oriented
// counter-clockwise when the lists run left to right.
void zip(const std::vector<int>& lo, const std::vector<int>& up, std::vector<Tri>& out) {
  const std::size_t n = lo.size(), m = up.size();
  std::size_t i = 0, j = 0;
  while (i < n || j < m) {
    if (j == m || (i < n && (i + 1) * m <= (j + 1) * n)) {
      out.push_back({lo[i], lo[(i + 1) % n], up[j % m]});
      ++i;
    } else {
      out.push_back({lo[i % n], up[(j + 1) % m], up[j]});
      ++j;
    }
  }
}

// Interior levels of a uniform grid on (a, b), fine enough that every step carries
// at most beta, with the two end steps halved further until they carry at most cap.
std::vector<Rational> choose_levels(const EdgeMeasureProfile& p, const Rational& a, const Rational& b,
                                    const Rational& beta, const Rational& cap) {
  std::vector<Rational> pts;
  for (int steps = 3;; steps *= 2) {
    pts.clear();
    for (int k = 0; k <= steps; ++k) pts.push_back(a + (b - a) * k / steps);
    bool fine = true;
    for (int k = 0; k < steps && fine; ++k) fine = p(pts[k + 1]) - p(pts[k]) <= beta;
    if (fine) break;
    if (steps > (1 << 16)) throw PreconditionError("profile too concentrated to realize");
  }
  for (int guard = 0; p(pts[1]) - p(pts[0]) > cap; ++guard) {
    if (guard > 64) throw PreconditionError("profile too concentrated to realize");
    pts.insert(pts.begin() + 1, (pts[0] + pts[1]) / 2);
  }
  for (int guard = 0; p(pts.back()) - p(pts[pts.size() - 2]) > cap; ++guard) {
    if (guard > 64) throw PreconditionError("profile too concentrated to realize");
    pts.insert(pts.end() - 1, (pts.back() + pts[pts.size() - 2]) / 2);
  }
  return {pts.begin() + 1, pts.end() - 1};
}

struct Piece {
  std::vector<Tri> tris;
  Rational area;  // per triangle
  int edge = -1;  // -1 for node templates
};

class Realizer {
 public:
  Realizer(const MeasuredReebGraph& g, int refinement) : g_(g) {
    beta_ = g.total_mass() / pow(Rational(2), static_cast<unsigned>(refinement + 3));
    // node templates spill onto every incident edge, so steps next to a node stay
    // well below the lightest edge meeting it
    std::vector<Rational> node_cap(g.nodes.size(), beta_);
    for (std::size_t e = 0; e < g.edges.size(); ++e)
      for (int n : {g.edges[e].tail, g.edges[e].head})
        node_cap[n] = std::min(node_cap[n], Rational(g.mass(static_cast<int>(e)) / 16));
    end_cap_.resize(g.edges.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e)
      end_cap_[e] = std::min(node_cap[g.edges[e].tail], node_cap[g.edges[e].head]);
  }

  SurfaceComplex run() {
    place_vertices();
    for (std::size_t e = 0; e < g_.edges.size(); ++e) build_cylinder(static_cast<int>(e));
    for (std::size_t n = 0; n < g_.nodes.size(); ++n)
      if (g_.nodes[n].f < 0) build_node(static_cast<int>(n));
    for (std::size_t e = 0; e < g_.edges.size(); ++e) build_middle_band(static_cast<int>(e));
    SurfaceComplex s = assemble();
    rescale(s);
    return s;
  }

 private:
  bool in_lower(int e) const { return g_.f_lo(e) < 0; }
  bool crossing(int e) const { return g_.f_lo(e) < 0 && g_.f_hi(e) > 0; }

  int vertex_of_node(int n) const {
    return g_.nodes[n].f < 0 ? node_vertex_[n] : node_vertex_[g_.node_involution[n]] + half_;
  }

  void place_vertices() {
    node_vertex_.assign(g_.nodes.size(), -1);
    for (std::size_t n = 0; n < g_.nodes.size(); ++n)
      if (g_.nodes[n].f < 0) {
        node_vertex_[n] = static_cast<int>(values_.size());
        values_.push_back(g_.nodes[n].f);
      }
    levels_.resize(g_.edges.size());
    rings_.resize(g_.edges.size());
    std::set<Rational> marks{0};
    for (const auto& n : g_.nodes) marks.insert(n.f);
    std::size_t ring_vertices = 0;
    for (std::size_t e = 0; e < g_.edges.size(); ++e) {
      if (!in_lower(static_cast<int>(e))) continue;
      const Rational top = std::min(g_.f_hi(static_cast<int>(e)), Rational(0));
      levels_[e] = choose_levels(g_.edges[e].profile, g_.f_lo(static_cast<int>(e)), top, beta_, end_cap_[e]);
      for (const auto& l : levels_[e]) {
        marks.insert(l);
        marks.insert(-l);
      }
      ring_vertices += levels_[e].size() * kRing;
    }
    // Ring vertices sit slightly above their nominal level, each at its own offset.
    Rational gap = -1;
    for (auto it = marks.begin(), next = std::next(it); next != marks.end(); ++it, ++next)
      if (gap < 0 || *next - *it < gap) gap = *next - *it;
    const Rational step = gap / (4 * static_cast<long>(ring_vertices + 1));
    long counter = 0;
    for (std::size_t e = 0; e < g_.edges.size(); ++e)
      for (const auto& l : levels_[e]) {
        Ring ring;
        for (int j = 0; j < kRing; ++j) {
          ring.push_back(static_cast<int>(values_.size()));
          values_.push_back(l + step * ++counter);
        }
        rings_[e].push_back(std::move(ring));
      }
    half_ = static_cast<int>(values_.size());
  }

  void build_cylinder(int e) {
    if (!in_lower(e)) return;
    const auto& lv = levels_[e];
    const auto& p = g_.edges[e].profile;
    for (std::size_t k = 0; k + 1 < lv.size(); ++k) {
      Piece piece;
      piece.edge = e;
      zip(rings_[e][k], rings_[e][k + 1], piece.tris);
      piece.area = (p(lv[k + 1]) - p(lv[k])) / static_cast<long>(piece.tris.size());
      mirrored_.push_back(std::move(piece));
    }
  }

  void build_node(int n) {
    std::vector<int> in, out;
    for (std::size_t e = 0; e < g_.edges.size(); ++e) {
      if (g_.edges[e].head == n) in.push_back(static_cast<int>(e));
      if (g_.edges[e].tail == n) out.push_back(static_cast<int>(e));
    }
    const int v = node_vertex_[n];
    Piece piece;
    // mass of every incident edge between the node and its nearest ring
    piece.area = 0;
    for (int e : in) piece.area += g_.edges[e].profile.mass() - g_.edges[e].profile(levels_[e].back());
    for (int e : out) piece.area += g_.edges[e].profile(levels_[e].front());
    auto top = [&](int e) -> const Ring& { return rings_[e].back(); };
    auto bottom = [&](int e) -> const Ring& { return rings_[e].front(); };
    auto figure_eight = [&](const Ring& a, const Ring& b) {
      Ring w(a);
      w.push_back(v);
      w.insert(w.end(), b.begin(), b.end());
      w.push_back(v);
      return w;
    };
    if (in.empty() && out.size() == 1) {
      const Ring& r = bottom(out[0]);
      for (int j = 0; j < kRing; ++j) piece.tris.push_back({v, r[(j + 1) % kRing], r[j]});
    } else if (in.size() == 1 && out.empty()) {
      const Ring& r = top(in[0]);
      for (int j = 0; j < kRing; ++j) piece.tris.push_back({v, r[j], r[(j + 1) % kRing]});
    } else if (in.size() == 2 && out.size() == 1) {
      const Ring &a = top(in[0]), &b = top(in[1]);
      zip(figure_eight(a, b), bottom(out[0]), piece.tris);
      piece.tris.push_back({a.back(), a.front(), v});
      piece.tris.push_back({b.back(), b.front(), v});
    } else if (in.size() == 1 && out.size() == 2) {
      const Ring &a = bottom(out[0]), &b = bottom(out[1]);
      zip(top(in[0]), figure_eight(a, b), piece.tris);
      piece.tris.push_back({a.front(), a.back(), v});
      piece.tris.push_back({b.front(), b.back(), v});
    } else {
      throw PreconditionError("node " + std::to_string(g_.nodes[n].id) + " is neither an extremum nor a saddle");
    }
    piece.area /= static_cast<long>(piece.tris.size());
    mirrored_.push_back(std::move(piece));
  }

  void build_middle_band(int e) {
    if (!crossing(e)) return;
    const int partner = g_.edge_involution[e];
    if (partner < e) return;
    const Ring& lower = rings_[e].back();
    const Ring& image_of = rings_[partner].back();
    Ring upper(kRing);
    // a self-paired band is its own mirror when the upper ring is turned by half a ring
    const int shift = partner == e ? (kRing - 1) / 2 : 0;
    for (int k = 0; k < kRing; ++k) upper[k] = image_of[((k - shift) % kRing + kRing) % kRing] + half_;
    Piece piece;
    piece.edge = e;
    zip(lower, upper, piece.tris);
    const auto& p = g_.edges[e].profile;
    piece.area = (p(-levels_[partner].back()) - p(levels_[e].back())) / static_cast<long>(piece.tris.size());
    (partner == e ? invariant_ : mirrored_).push_back(std::move(piece));
  }

  SurfaceComplex assemble() {
    SurfaceComplex s;
    const int nv = 2 * half_;
    s.ids.resize(nv);
    s.f.resize(nv);
    s.involution.resize(nv);
    for (int x = 0; x < half_; ++x) {
      s.f[x] = values_[x];
      s.f[x + half_] = -values_[x];
      s.involution[x] = x + half_;
      s.involution[x + half_] = x;
    }
    for (int x = 0; x < nv; ++x) s.ids[x] = x;
    auto image = [&](int x) { return x < half_ ? x + half_ : x - half_; };
    for (const auto& piece : mirrored_)
      for (const auto& t : piece.tris) {
        add(s, t, piece.area, piece.edge);
        add(s, {image(t[0]), image(t[2]), image(t[1])}, piece.area, piece.edge < 0 ? -1 : g_.edge_involution[piece.edge]);
      }
    for (const auto& piece : invariant_)
      for (const auto& t : piece.tris) add(s, t, piece.area, piece.edge);
    return s;
  }

  void add(SurfaceComplex& s, const Tri& t, const Rational& area, int edge) {
    s.triangles.push_back(t);
    s.areas.push_back(area);
    tag_.push_back(edge);
  }

  // Scales each edge's band areas so that the masses come out exact.
  void rescale(SurfaceComplex& s) {
    const MeasuredReebGraph first = build_measured_reeb(s);
    const int ne = static_cast<int>(g_.edges.size());
    std::vector<int> realized(ne, -1);
    std::vector<Rational> band(ne, 0);
    for (std::size_t t = 0; t < s.triangles.size(); ++t) {
      const int e = tag_[t];
      if (e < 0) continue;
      band[e] += s.areas[t];
      const auto& slabs = first.cellmap->slab_edges[t];
      for (int r : slabs)
        if (realized[e] >= 0 ? realized[e] != r : (realized[e] = r, false))
          throw PreconditionError("realized cylinder spans several Reeb edges");
    }
    std::vector<Rational> scale(ne);
    for (int e = 0; e < ne; ++e) {
      if (realized[e] < 0 || band[e] == 0) throw PreconditionError("edge without a realized cylinder");
      const Rational fixed = first.mass(realized[e]) - band[e];
      scale[e] = (g_.mass(e) - fixed) / band[e];
      if (scale[e] <= 0) throw PreconditionError("node templates outweigh an edge mass");
    }
    for (int e = 0; e < ne; ++e)
      if (scale[e] != scale[g_.edge_involution[e]]) throw PreconditionError("asymmetric area scaling");
    for (std::size_t t = 0; t < s.triangles.size(); ++t)
      if (tag_[t] >= 0) s.areas[t] *= scale[tag_[t]];
  }

  const MeasuredReebGraph& g_;
  Rational beta_;
  std::vector<Rational> end_cap_;
  std::vector<Rational> values_;  // lower half
  int half_ = 0;
  std::vector<int> node_vertex_;
  std::vector<std::vector<Rational>> levels_;
  std::vector<std::vector<Ring>> rings_;
  std::vector<Piece> mirrored_, invariant_;
  std::vector<int> tag_;
};

}  // namespace

SurfaceComplex realize_graph(const MeasuredReebGraph& g, int refinement) {
  if (refinement < 0) throw PreconditionError("refinement must be non-negative");
  if (!g.measured) throw PreconditionError("graph carries no measure");
  const auto problems = validate_graph(g);
  if (!problems.empty()) throw PreconditionError("invalid graph: " + problems.front());
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    if (g.mass(static_cast<int>(e)) <= 0) throw PreconditionError("edge " + std::to_string(g.edges[e].id) + " has no mass");
  return Realizer(g, refinement).run();
}

}  // namespace reebinv
