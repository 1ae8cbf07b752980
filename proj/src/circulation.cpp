#include "reebinv/circulation.hpp"

#include <algorithm>
#include <map>

#include "reebinv/linalg.hpp"
#include "reebinv/union_find.hpp"

namespace reebinv {

Rational edge_flux(const EdgeMeasureProfile& p) { return p.moment(1); }

Rational CirculationGraph::value(int e, const Rational& t) const {
  return cref[e] + base.edges[e].profile.partial_moment(1, t);
}

Rational CirculationGraph::head_limit(int e) const { return cref[e] + edge_flux(base.edges[e].profile); }

std::vector<Rational> kirchhoff_residuals(const CirculationGraph& c) {
  std::vector<Rational> r(c.base.nodes.size());
  for (std::size_t e = 0; e < c.base.edges.size(); ++e) {
    r[c.base.edges[e].head] += c.head_limit(static_cast<int>(e));
    r[c.base.edges[e].tail] -= c.cref[e];
  }
  return r;
}

std::vector<Rational> evenness_residuals(const CirculationGraph& c) {
  std::vector<Rational> r(c.base.edges.size());
  for (std::size_t e = 0; e < c.base.edges.size(); ++e)
    r[e] = c.cref[e] - c.head_limit(c.base.edge_involution[e]);
  return r;
}

CirculationSpace solve_circulation_space(const MeasuredReebGraph& g) {
  if (!g.has_involution() || !g.measured) throw PreconditionError("graph needs a measure and an involution");
  const std::size_t ne = g.edges.size(), nn = g.nodes.size();
  std::vector<Rational> flux(ne);
  for (std::size_t e = 0; e < ne; ++e) flux[e] = edge_flux(g.edges[e].profile);

  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  // Kirchhoff: sum_in (x_e + flux_e) - sum_out x_e = 0
  for (std::size_t n = 0; n < nn; ++n) {
    std::vector<Rational> row(ne);
    Rational b = 0;
    for (std::size_t e = 0; e < ne; ++e) {
      if (g.edges[e].head == static_cast<int>(n)) {
        row[e] += 1;
        b -= flux[e];
      }
      if (g.edges[e].tail == static_cast<int>(n)) row[e] -= 1;
    }
    rows.push_back(std::move(row));
    rhs.push_back(b);
  }
  // evenness, one equation per orbit: x_e - x_iota(e) = flux_iota(e)
  for (std::size_t e = 0; e < ne; ++e) {
    const auto m = static_cast<std::size_t>(g.edge_involution[e]);
    if (m <= e) continue;
    std::vector<Rational> row(ne);
    row[e] = 1;
    row[m] = -1;
    rows.push_back(std::move(row));
    rhs.push_back(flux[m]);
  }
  RationalMatrix a(rows.size(), ne);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < ne; ++c) a(r, c) = rows[r][c];
  auto sol = solve_affine(a, rhs);
  if (!sol) throw PreconditionError("inconsistent system");
  return {std::move(sol->particular), std::move(sol->homogeneous)};
}

Rational DiscreteOneForm::oriented(const Connectivity& c, int u, int v) const {
  const int e = c.edge_index(u, v);
  if (e < 0) throw PreconditionError("no such mesh edge");
  return c.edges[e][0] == u ? values[e] : Rational(-values[e]);
}

void DiscreteOneForm::set_oriented(const Connectivity& c, int u, int v, const Rational& value) {
  const int e = c.edge_index(u, v);
  if (e < 0) throw PreconditionError("no such mesh edge");
  values[e] = c.edges[e][0] == u ? value : Rational(-value);
}

DiscreteOneForm DiscreteOneForm::operator+(const DiscreteOneForm& o) const {
  DiscreteOneForm out = *this;
  for (std::size_t i = 0; i < values.size(); ++i) out.values[i] += o.values[i];
  return out;
}

DiscreteOneForm DiscreteOneForm::scaled(const Rational& k) const {
  DiscreteOneForm out = *this;
  for (auto& v : out.values) v *= k;
  return out;
}

bool is_even(const SurfaceComplex& s, const Connectivity& c, const DiscreteOneForm& alpha) {
  for (std::size_t e = 0; e < c.edges.size(); ++e) {
    const auto [u, v] = c.edges[e];
    if (alpha.oriented(c, s.involution[u], s.involution[v]) != alpha.values[e]) return false;
  }
  return true;
}

DiscreteOneForm exact_form(const SurfaceComplex&, const Connectivity& c, const std::vector<Rational>& h) {
  DiscreteOneForm out = DiscreteOneForm::zero(c);
  for (std::size_t e = 0; e < c.edges.size(); ++e) out.values[e] = h[c.edges[e][1]] - h[c.edges[e][0]];
  return out;
}

namespace {

Rational boundary_sum(const SurfaceComplex& s, const Connectivity& c, const DiscreteOneForm& alpha, int t) {
  const auto& tri = s.triangles[t];
  return alpha.oriented(c, tri[0], tri[1]) + alpha.oriented(c, tri[1], tri[2]) + alpha.oriented(c, tri[2], tri[0]);
}

}  // namespace

std::vector<Rational> discrete_curl(const SurfaceComplex& s, const DiscreteOneForm& alpha) {
  const Connectivity c = build_connectivity(s);
  std::vector<Rational> out(s.triangle_count());
  for (std::size_t t = 0; t < s.triangle_count(); ++t)
    out[t] = boundary_sum(s, c, alpha, static_cast<int>(t)) / s.areas[t];
  return out;
}

std::vector<Rational> triangle_means(const SurfaceComplex& s) {
  std::vector<Rational> out(s.triangle_count());
  for (std::size_t t = 0; t < s.triangle_count(); ++t) {
    const auto& tri = s.triangles[t];
    out[t] = (s.f[tri[0]] + s.f[tri[1]] + s.f[tri[2]]) / 3;
  }
  return out;
}

DiscreteOneForm solve_primitive(const SurfaceComplex& s, const std::vector<Rational>& target) {
  const Connectivity c = build_connectivity(s);
  const int ntri = static_cast<int>(s.triangle_count());
  {
    Rational total = 0;
    for (int t = 0; t < ntri; ++t) total += target[t] * s.areas[t];
    if (total != 0) throw PreconditionError("target curl does not integrate to zero");
  }
  // breadth-first dual spanning tree
  std::vector<int> parent_edge(ntri, -1), order;
  std::vector<bool> seen(ntri, false);
  order.reserve(ntri);
  order.push_back(0);
  seen[0] = true;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const int t = order[head];
    for (int e : c.triangle_edges[t])
      for (int nb : c.edge_triangles[e])
        if (!seen[nb]) {
          seen[nb] = true;
          parent_edge[nb] = e;
          order.push_back(nb);
        }
  }
  DiscreteOneForm alpha = DiscreteOneForm::zero(c);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int t = *it;
    const int pe = parent_edge[t];
    if (pe < 0) continue;
    const auto& tri = s.triangles[t];
    Rational known = 0;
    int sign = 0;
    for (int i = 0; i < 3; ++i) {
      const int u = tri[i], v = tri[(i + 1) % 3];
      const int e = c.edge_index(u, v);
      const int orient = c.edges[e][0] == u ? 1 : -1;
      if (e == pe)
        sign = orient;
      else
        known += orient * alpha.values[e];
    }
    alpha.values[pe] = (target[t] * s.areas[t] - known) / sign;
  }
  DiscreteOneForm even = DiscreteOneForm::zero(c);
  for (std::size_t e = 0; e < c.edges.size(); ++e) {
    const auto [u, v] = c.edges[e];
    even.values[e] = (alpha.values[e] + alpha.oriented(c, s.involution[u], s.involution[v])) / 2;
  }
  return even;
}

namespace {

// Oriented chord integral of the Whitney interpolant inside triangle t at level value.
Rational triangle_chord(const SurfaceComplex& s, const Connectivity& c, const DiscreteOneForm& alpha,
                        const Rational& level, int t) {
  const auto& tri = s.triangles[t];
  std::array<Rational, 3> fv{s.f[tri[0]], s.f[tri[1]], s.f[tri[2]]};
  std::array<std::array<Rational, 3>, 2> pts;
  int k = 0;
  for (int i = 0; i < 3 && k < 2; ++i) {
    const int j = (i + 1) % 3;
    if ((fv[i] < level) == (fv[j] < level)) continue;
    std::array<Rational, 3> p{0, 0, 0};
    p[i] = (fv[j] - level) / (fv[j] - fv[i]);
    p[j] = 1 - p[i];
    pts[k++] = p;
  }
  if (k != 2) return 0;
  auto& P = pts[0];
  auto& Q = pts[1];
  // reference embedding a=(0,0), b=(1,0), c=(0,1); keep f increasing to the right
  const Rational dx = Q[1] - P[1], dy = Q[2] - P[2];
  const Rational gx = fv[1] - fv[0], gy = fv[2] - fv[0];
  if (dy * gx - dx * gy < 0) std::swap(P, Q);
  Rational total = 0;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    total += alpha.oriented(c, tri[i], tri[j]) * (P[i] * Q[j] - P[j] * Q[i]);
  }
  return total;
}

}  // namespace

Rational chord_circulation(const SurfaceComplex& s, const Connectivity& c, const DiscreteOneForm& alpha,
                           const Rational& t, const std::vector<int>& triangles) {
  Rational total = 0;
  for (int tr : triangles) total += triangle_chord(s, c, alpha, t, tr);
  return total;
}

std::vector<LevelComponent> level_components(const SurfaceComplex& s, const Rational& t) {
  for (const auto& v : s.f)
    if (v == t) throw PreconditionError("level " + format_rational(t) + " hits a vertex value");
  const Connectivity c = build_connectivity(s);
  auto crosses = [&](int e) { return (s.f[c.edges[e][0]] < t) != (s.f[c.edges[e][1]] < t); };
  UnionFind uf(c.edges.size());
  std::vector<int> crossing_triangles;
  for (int tr = 0; tr < static_cast<int>(s.triangle_count()); ++tr) {
    int found[3], k = 0;
    for (int e : c.triangle_edges[tr])
      if (crosses(e)) found[k++] = e;
    if (k == 2) {
      uf.unite(found[0], found[1]);
      crossing_triangles.push_back(tr);
    }
  }
  std::map<std::size_t, LevelComponent> groups;
  for (int e = 0; e < static_cast<int>(c.edges.size()); ++e)
    if (crosses(e)) groups[uf.find(e)].crossing_edges.push_back(e);
  for (int tr : crossing_triangles) {
    for (int e : c.triangle_edges[tr])
      if (crosses(e)) {
        groups[uf.find(e)].triangles.push_back(tr);
        break;
      }
  }
  std::vector<LevelComponent> out;
  for (auto& [root, comp] : groups) out.push_back(std::move(comp));
  std::sort(out.begin(), out.end(),
            [](const LevelComponent& a, const LevelComponent& b) { return a.crossing_edges < b.crossing_edges; });
  return out;
}

Rational level_cycle_circulation(const SurfaceComplex& s, const DiscreteOneForm& alpha, const Rational& t,
                                 int component) {
  const auto comps = level_components(s, t);
  if (component < 0 || component >= static_cast<int>(comps.size()))
    throw PreconditionError("no level component " + std::to_string(component));
  const Connectivity c = build_connectivity(s);
  return chord_circulation(s, c, alpha, t, comps[component].triangles);
}

CosetCirculation coset_to_circulation_graph(const SurfaceComplex& s, const DiscreteOneForm& alpha,
                                            const MeasuredReebGraph& g) {
  if (!g.cellmap || !g.measured || !g.has_involution())
    throw PreconditionError("graph must come from build_measured_reeb on this mesh");
  const auto curl = discrete_curl(s, alpha);
  const auto means = triangle_means(s);
  for (std::size_t t = 0; t < curl.size(); ++t)
    if (curl[t] != means[t])
      throw PreconditionError("curl of the 1-form differs from the triangle means at triangle " + std::to_string(t));

  const Connectivity c = build_connectivity(s);
  const CellMap& cm = *g.cellmap;
  std::vector<Rational> values = s.f;
  std::sort(values.begin(), values.end());
  const int ntri = static_cast<int>(s.triangle_count());

  auto tri_values = [&](int t) {
    const auto& tri = s.triangles[t];
    return std::array<Rational, 3>{s.f[tri[0]], s.f[tri[1]], s.f[tri[2]]};
  };
  // Triangles whose piece at regular level `at` belongs to edge e.
  auto triangles_at = [&](int e, const Rational& at) {
    std::vector<int> out;
    for (int t = 0; t < ntri; ++t) {
      auto v = tri_values(t);
      const auto [lo, hi] = std::minmax({v[0], v[1], v[2]});
      if (lo < at && at < hi && cm.edge_at(t, at) == e) out.push_back(t);
    }
    return out;
  };

  CosetCirculation out;
  out.graph.base = g;
  const int ne = static_cast<int>(g.edges.size());
  out.graph.cref.resize(ne);
  out.stokes_defect.resize(ne);
  out.max_defect = 0;
  for (int e = 0; e < ne; ++e) {
    const Rational lo = g.f_lo(e), hi = g.f_hi(e);
    const Rational above = *std::upper_bound(values.begin(), values.end(), lo);
    const Rational below = *(std::lower_bound(values.begin(), values.end(), hi) - 1);
    const Rational t0 = (lo + above) / 2, t1 = (below + hi) / 2;

    const auto near_tail = triangles_at(e, t0);
    Rational tail = chord_circulation(s, c, alpha, t0, near_tail);
    for (int t : near_tail)
      tail -= curl[t] * (triangle_sublevel_area(tri_values(t), s.areas[t], t0) -
                         triangle_sublevel_area(tri_values(t), s.areas[t], lo));
    const auto near_head = triangles_at(e, t1);
    Rational head = chord_circulation(s, c, alpha, t1, near_head);
    for (int t : near_head)
      head += curl[t] * (triangle_sublevel_area(tri_values(t), s.areas[t], hi) -
                         triangle_sublevel_area(tri_values(t), s.areas[t], t1));
    out.graph.cref[e] = tail;
    out.stokes_defect[e] = head - out.graph.head_limit(e);
    out.max_defect = std::max(out.max_defect, Rational(abs(out.stokes_defect[e])));
  }
  return out;
}

}  // namespace reebinv
