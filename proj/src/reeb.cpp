#include "reebinv/reeb.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "reebinv/union_find.hpp"

namespace reebinv {

namespace {

std::array<Rational, 3> sorted_values(const SurfaceComplex& s, int t) {
  const auto& tri = s.triangles[t];
  std::array<Rational, 3> v{s.f[tri[0]], s.f[tri[1]], s.f[tri[2]]};
  std::sort(v.begin(), v.end());
  return v;
}

// Band range [first, last] spanned by the open interval (lo, hi).
std::pair<int, int> band_span(const std::vector<Rational>& levels, const Rational& lo, const Rational& hi) {
  const int first = static_cast<int>(std::upper_bound(levels.begin(), levels.end(), lo) - levels.begin()) - 1;
  const int last = static_cast<int>(std::lower_bound(levels.begin(), levels.end(), hi) - levels.begin()) - 1;
  return {first, last};
}

struct Chord {
  int triangle;
  int key[2];  // crossing mesh edge, or -1 for the critical vertex itself
};

}  // namespace

int CellMap::band_of(const Rational& value) const {
  return static_cast<int>(std::upper_bound(levels.begin(), levels.end(), value) - levels.begin()) - 1;
}

int CellMap::edge_at(int triangle, const Rational& value) const {
  const int k = band_of(value) - first_band[triangle];
  if (k < 0 || k >= static_cast<int>(slab_edges[triangle].size())) return -1;
  return slab_edges[triangle][k];
}

int MeasuredReebGraph::valence(int node) const {
  int v = 0;
  for (const auto& e : edges) v += (e.tail == node) + (e.head == node);
  return v;
}

Rational MeasuredReebGraph::total_mass() const {
  Rational total = 0;
  for (std::size_t e = 0; e < edges.size(); ++e) total += mass(static_cast<int>(e));
  return total;
}

int MeasuredReebGraph::node_index(int id) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].id == id) return static_cast<int>(i);
  return -1;
}

int MeasuredReebGraph::edge_index(int id) const {
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].id == id) return static_cast<int>(i);
  return -1;
}

std::vector<std::string> validate_graph(const MeasuredReebGraph& g) {
  std::vector<std::string> out;
  const int nn = static_cast<int>(g.nodes.size()), ne = static_cast<int>(g.edges.size());
  if (nn == 0) out.push_back("graph has no nodes");
  for (int e = 0; e < ne; ++e) {
    const auto& edge = g.edges[e];
    if (edge.tail < 0 || edge.tail >= nn || edge.head < 0 || edge.head >= nn) {
      out.push_back("edge " + std::to_string(edge.id) + " references a missing node");
      return out;
    }
    if (!(g.f_lo(e) < g.f_hi(e))) out.push_back("f not increasing along edge " + std::to_string(edge.id));
  }
  for (int n = 0; n < nn; ++n) {
    const int val = g.valence(n);
    if (val != 1 && val != 3)
      out.push_back("node " + std::to_string(g.nodes[n].id) + " has valence " + std::to_string(val));
    if (g.nodes[n].f == 0) out.push_back("node " + std::to_string(g.nodes[n].id) + " has f = 0");
  }
  {
    std::vector<Rational> values;
    for (const auto& n : g.nodes) values.push_back(n.f);
    std::sort(values.begin(), values.end());
    if (std::adjacent_find(values.begin(), values.end()) != values.end()) out.push_back("node values not distinct");
  }
  {
    UnionFind uf(nn);
    for (const auto& e : g.edges) uf.unite(e.tail, e.head);
    if (nn > 0 && uf.count() != 1) out.push_back("graph is disconnected");
  }
  if (g.measured)
    for (int e = 0; e < ne; ++e) {
      const auto& p = g.edges[e].profile;
      if (p.lo != g.f_lo(e) || p.hi != g.f_hi(e))
        out.push_back("profile interval of edge " + std::to_string(g.edges[e].id) + " does not match its nodes");
      for (const auto& v : p.violations()) out.push_back("profile of edge " + std::to_string(g.edges[e].id) + ": " + v);
    }
  if (g.has_involution()) {
    if (static_cast<int>(g.node_involution.size()) != nn || static_cast<int>(g.edge_involution.size()) != ne) {
      out.push_back("involution size mismatch");
      return out;
    }
    for (int n = 0; n < nn; ++n) {
      const int m = g.node_involution[n];
      if (m < 0 || m >= nn) {
        out.push_back("node involution out of range");
        return out;
      }
      if (g.node_involution[m] != n) out.push_back("node involution is not an involution");
      if (m == n) out.push_back("node " + std::to_string(g.nodes[n].id) + " is fixed by the involution");
      if (g.nodes[m].f != -g.nodes[n].f) out.push_back("f not odd at node " + std::to_string(g.nodes[n].id));
    }
    for (int e = 0; e < ne; ++e) {
      const int m = g.edge_involution[e];
      if (m < 0 || m >= ne) {
        out.push_back("edge involution out of range");
        return out;
      }
      if (g.edge_involution[m] != e) out.push_back("edge involution is not an involution");
      if (g.node_involution[g.edges[e].tail] != g.edges[m].head || g.node_involution[g.edges[e].head] != g.edges[m].tail)
        out.push_back("involution does not reverse edge " + std::to_string(g.edges[e].id));
      if (g.measured && e <= m && !same_measure(g.edges[m].profile, g.edges[e].profile.mirrored()))
        out.push_back("measure not invariant on edge " + std::to_string(g.edges[e].id));
    }
  }
  return out;
}

Rational triangle_sublevel_area(std::array<Rational, 3> v, const Rational& area, const Rational& t) {
  std::sort(v.begin(), v.end());
  if (t <= v[0]) return 0;
  if (t >= v[2]) return area;
  if (t <= v[1]) {
    const Rational d = t - v[0];
    return area * d * d / ((v[1] - v[0]) * (v[2] - v[0]));
  }
  const Rational d = v[2] - t;
  return area - area * d * d / ((v[2] - v[0]) * (v[2] - v[1]));
}

MeasuredReebGraph compute_reeb(const SurfaceComplex& s) {
  if (auto issues = check_simple_morse_odd(s); !issues.empty())
    throw PreconditionError("not simple Morse odd: " + issues.front());

  const Connectivity conn = build_connectivity(s);
  const CriticalReport crit = classify_critical_vertices(s);

  std::vector<int> crit_vertices;
  for (std::size_t v = 0; v < s.vertex_count(); ++v)
    if (crit.tags[v] != VertexTag::Regular) crit_vertices.push_back(static_cast<int>(v));
  std::sort(crit_vertices.begin(), crit_vertices.end(), [&](int a, int b) { return s.f[a] < s.f[b]; });
  const int ncrit = static_cast<int>(crit_vertices.size());
  std::vector<Rational> levels;
  for (int v : crit_vertices) levels.push_back(s.f[v]);
  std::vector<int> level_of_vertex(s.vertex_count(), -1);
  for (int i = 0; i < ncrit; ++i) level_of_vertex[crit_vertices[i]] = i;

  // slab numbering
  const int ntri = static_cast<int>(s.triangle_count());
  std::vector<int> first(ntri), last(ntri), offset(ntri + 1, 0);
  for (int t = 0; t < ntri; ++t) {
    const auto v = sorted_values(s, t);
    std::tie(first[t], last[t]) = band_span(levels, v[0], v[2]);
    offset[t + 1] = offset[t] + (last[t] - first[t] + 1);
  }
  auto slab = [&](int t, int band) { return static_cast<std::size_t>(offset[t] + band - first[t]); };

  // level chords at every critical value strictly inside a triangle's range
  std::vector<std::vector<Chord>> chords(ncrit);
  for (int t = 0; t < ntri; ++t) {
    const auto& tri = s.triangles[t];
    for (int i = first[t] + 1; i <= last[t]; ++i) {
      const Rational& c = levels[i];
      Chord chord{t, {-2, -2}};
      int k = 0;
      for (int j = 0; j < 3; ++j) {
        const int a = tri[(j + 1) % 3], b = tri[(j + 2) % 3];
        if ((s.f[a] < c && c < s.f[b]) || (s.f[b] < c && c < s.f[a])) chord.key[k++] = conn.triangle_edges[t][j];
        if (s.f[tri[j]] == c) chord.key[k++] = -1;
      }
      chords[i].push_back(chord);
    }
  }

  // singular level components: the ones touching the critical vertex
  std::vector<std::vector<bool>> regular(ncrit);
  for (int i = 0; i < ncrit; ++i) {
    const auto& cs = chords[i];
    UnionFind uf(cs.size() + 1);
    const std::size_t vertex_node = cs.size();
    std::unordered_map<int, std::size_t> seen;
    for (std::size_t j = 0; j < cs.size(); ++j)
      for (int key : cs[j].key) {
        if (key == -1) {
          uf.unite(j, vertex_node);
        } else if (auto [it, fresh] = seen.emplace(key, j); !fresh) {
          uf.unite(j, it->second);
        }
      }
    regular[i].resize(cs.size());
    for (std::size_t j = 0; j < cs.size(); ++j) regular[i][j] = uf.find(j) != uf.find(vertex_node);
  }

  UnionFind slabs(static_cast<std::size_t>(offset[ntri]));
  for (std::size_t e = 0; e < conn.edges.size(); ++e) {
    const auto& ts = conn.edge_triangles[e];
    if (ts.size() != 2) continue;
    const auto [u, v] = conn.edges[e];
    const Rational& lo = std::min(s.f[u], s.f[v]);
    const Rational& hi = std::max(s.f[u], s.f[v]);
    const auto [b0, b1] = band_span(levels, lo, hi);
    for (int k = b0; k <= b1; ++k) slabs.unite(slab(ts[0], k), slab(ts[1], k));
  }
  for (int i = 0; i < ncrit; ++i)
    for (std::size_t j = 0; j < chords[i].size(); ++j)
      if (regular[i][j]) {
        const int t = chords[i][j].triangle;
        slabs.unite(slab(t, i - 1), slab(t, i));
      }

  // components -> edges
  struct Component {
    int lowest = std::numeric_limits<int>::max();
    int highest = -1;
    std::size_t first_slab = std::numeric_limits<std::size_t>::max();
  };
  std::map<std::size_t, Component> comps;
  for (int t = 0; t < ntri; ++t)
    for (int k = first[t]; k <= last[t]; ++k) {
      auto& c = comps[slabs.find(slab(t, k))];
      c.lowest = std::min(c.lowest, k);
      c.highest = std::max(c.highest, k);
      c.first_slab = std::min(c.first_slab, slab(t, k));
    }
  std::vector<std::pair<std::size_t, Component>> ordered(comps.begin(), comps.end());
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    return std::tie(a.second.lowest, a.second.highest, a.second.first_slab) <
           std::tie(b.second.lowest, b.second.highest, b.second.first_slab);
  });

  MeasuredReebGraph g;
  for (int i = 0; i < ncrit; ++i) g.nodes.push_back({i, levels[i], crit_vertices[i]});
  std::unordered_map<std::size_t, int> edge_of_root;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    const auto& c = ordered[i].second;
    g.edges.push_back({static_cast<int>(i), c.lowest, c.highest + 1, {}});
    edge_of_root[ordered[i].first] = static_cast<int>(i);
  }
  for (int n = 0; n < ncrit; ++n) {
    const int val = g.valence(n);
    if (val != 1 && val != 3)
      throw PreconditionError("sweep produced valence " + std::to_string(val) + " at vertex " +
                              std::to_string(s.ids[crit_vertices[n]]));
  }

  CellMap cm;
  cm.levels = levels;
  cm.first_band = first;
  cm.slab_edges.resize(ntri);
  for (int t = 0; t < ntri; ++t)
    for (int k = first[t]; k <= last[t]; ++k) cm.slab_edges[t].push_back(edge_of_root.at(slabs.find(slab(t, k))));
  g.cellmap = std::move(cm);
  return g;
}

MeasuredReebGraph induce_involution(const SurfaceComplex& s, MeasuredReebGraph g) {
  if (!g.cellmap) throw PreconditionError("graph carries no cellmap");
  const CellMap& cm = *g.cellmap;
  const int nn = static_cast<int>(g.nodes.size()), ne = static_cast<int>(g.edges.size());
  const int top_band = static_cast<int>(cm.levels.size()) - 2;

  std::vector<int> node_of_vertex(s.vertex_count(), -1);
  for (int n = 0; n < nn; ++n) node_of_vertex[g.nodes[n].vertex] = n;
  g.node_involution.assign(nn, -1);
  for (int n = 0; n < nn; ++n) {
    const int image = node_of_vertex[s.involution[g.nodes[n].vertex]];
    if (image < 0) throw PreconditionError("involution image of a critical vertex is not critical");
    g.node_involution[n] = image;
  }

  const TriangleLookup lookup(s);
  g.edge_involution.assign(ne, -1);
  for (int t = 0; t < static_cast<int>(s.triangle_count()); ++t) {
    const auto& tri = s.triangles[t];
    const int it = lookup.find(s.involution[tri[0]], s.involution[tri[1]], s.involution[tri[2]]);
    if (it < 0) throw PreconditionError("involution does not map triangles to triangles");
    for (std::size_t k = 0; k < cm.slab_edges[t].size(); ++k) {
      const int band = cm.first_band[t] + static_cast<int>(k);
      const int image_band = top_band - band;
      const int local = image_band - cm.first_band[it];
      if (local < 0 || local >= static_cast<int>(cm.slab_edges[it].size()))
        throw PreconditionError("cellmap inconsistent with the involution");
      const int e = cm.slab_edges[t][k], img = cm.slab_edges[it][local];
      if (g.edge_involution[e] == -1)
        g.edge_involution[e] = img;
      else if (g.edge_involution[e] != img)
        throw PreconditionError("involution does not permute level components consistently");
    }
  }
  for (int e = 0; e < ne; ++e) {
    const int m = g.edge_involution[e];
    if (m < 0 || g.edge_involution[m] != e || g.node_involution[g.edges[e].tail] != g.edges[m].head)
      throw PreconditionError("induced edge involution is inconsistent");
  }
  return g;
}

MeasuredReebGraph pushforward_measure(const SurfaceComplex& s, MeasuredReebGraph g) {
  if (!g.cellmap) throw PreconditionError("graph carries no cellmap");
  const CellMap& cm = *g.cellmap;
  const int ne = static_cast<int>(g.edges.size());

  std::vector<std::vector<int>> triangles_of(ne);
  for (int t = 0; t < static_cast<int>(s.triangle_count()); ++t) {
    std::set<int> es(cm.slab_edges[t].begin(), cm.slab_edges[t].end());
    for (int e : es) triangles_of[e].push_back(t);
  }

  for (int e = 0; e < ne; ++e) {
    const Rational lo = g.f_lo(e), hi = g.f_hi(e);
    // Coefficient jumps of the summed cumulative areas, keyed by position.
    std::map<Rational, Quadratic> jumps;
    Quadratic start{0, 0, 0};
    auto add = [&](const Rational& at, const Quadratic& q) {
      if (at <= lo)
        start += q;
      else if (at < hi)
        jumps[at] += q;
    };
    for (int t : triangles_of[e]) {
      const auto v = sorted_values(s, t);
      const Rational& area = s.areas[t];
      const Rational k1 = area / ((v[1] - v[0]) * (v[2] - v[0]));
      const Rational k2 = area / ((v[2] - v[0]) * (v[2] - v[1]));
      const Quadratic q1{k1, -2 * k1 * v[0], k1 * v[0] * v[0]};
      const Quadratic q2{-k2, 2 * k2 * v[2], area - k2 * v[2] * v[2]};
      add(v[0], q1);
      add(v[1], {q2.a - q1.a, q2.b - q1.b, q2.c - q1.c});
      add(v[2], {-q2.a, -q2.b, area - q2.c});
    }
    EdgeMeasureProfile p;
    p.lo = lo;
    p.hi = hi;
    start.c -= start(lo);
    p.pieces.push_back(start);
    Quadratic running = start;
    for (auto& [at, q] : jumps) {
      running += q;
      p.breaks.push_back(at);
      p.pieces.push_back(running);
    }
    p.simplify();
    g.edges[e].profile = std::move(p);
  }
  g.measured = true;
  return g;
}

MeasuredReebGraph build_measured_reeb(const SurfaceComplex& s) {
  return pushforward_measure(s, induce_involution(s, compute_reeb(s)));
}

LevelOracle reeb_oracle(const SurfaceComplex& s, const std::vector<Rational>& levels) {
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (i > 0 && !(levels[i - 1] < levels[i])) throw PreconditionError("levels must be strictly increasing");
    for (const auto& v : s.f)
      if (v == levels[i]) throw PreconditionError("level " + format_rational(levels[i]) + " equals a vertex value");
  }
  const Connectivity conn = build_connectivity(s);
  const int ntri = static_cast<int>(s.triangle_count());
  auto crosses = [&](int edge, const Rational& t) {
    const auto [u, v] = conn.edges[edge];
    return (s.f[u] < t) != (s.f[v] < t);
  };

  LevelOracle out;
  out.levels = levels;
  for (std::size_t li = 0; li < levels.size(); ++li) {
    const Rational& t = levels[li];
    std::vector<int> crossing;
    for (int e = 0; e < static_cast<int>(conn.edges.size()); ++e)
      if (crosses(e, t)) crossing.push_back(e);
    std::unordered_map<int, std::size_t> local;
    for (std::size_t i = 0; i < crossing.size(); ++i) local[crossing[i]] = i;
    UnionFind uf(crossing.size());
    for (int tr = 0; tr < ntri; ++tr) {
      int found[3], k = 0;
      for (int j = 0; j < 3; ++j)
        if (crosses(conn.triangle_edges[tr][j], t)) found[k++] = conn.triangle_edges[tr][j];
      if (k == 2) uf.unite(local[found[0]], local[found[1]]);
    }
    std::map<std::size_t, std::vector<int>> groups;
    for (int e : crossing) groups[uf.find(local[e])].push_back(e);
    std::vector<std::vector<int>> comps;
    for (auto& [root, es] : groups) comps.push_back(std::move(es));
    std::sort(comps.begin(), comps.end());
    out.components.push_back(std::move(comps));
  }

  for (std::size_t li = 0; li + 1 < levels.size(); ++li) {
    const Rational &t1 = levels[li], &t2 = levels[li + 1];
    auto in_band = [&](const Rational& lo, const Rational& hi) { return lo < t2 && hi > t1; };
    UnionFind uf(ntri);
    for (std::size_t e = 0; e < conn.edges.size(); ++e) {
      const auto [u, v] = conn.edges[e];
      const auto& ts = conn.edge_triangles[e];
      if (ts.size() == 2 && in_band(std::min(s.f[u], s.f[v]), std::max(s.f[u], s.f[v]))) uf.unite(ts[0], ts[1]);
    }
    auto root_of = [&](const std::vector<int>& comp) { return uf.find(conn.edge_triangles[comp.front()].front()); };
    std::set<std::pair<int, int>> pairs;
    const auto& lower = out.components[li];
    const auto& upper = out.components[li + 1];
    for (std::size_t a = 0; a < lower.size(); ++a)
      for (std::size_t b = 0; b < upper.size(); ++b)
        if (root_of(lower[a]) == root_of(upper[b]))
          pairs.emplace(static_cast<int>(a), static_cast<int>(b));
    out.adjacency.emplace_back(pairs.begin(), pairs.end());
  }
  return out;
}

}  // namespace reebinv
