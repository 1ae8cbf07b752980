#include "reebinv/mesh.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "reebinv/union_find.hpp"

namespace reebinv {

namespace {

std::uint64_t pair_key(int u, int v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
         static_cast<std::uint32_t>(v);
}

// Cyclic link of v, following the orientation of the incident triangles.
// Returns an empty vector when the link is not a single cycle.
std::vector<int> vertex_link(const SurfaceComplex& s, const Connectivity& c, int v) {
  std::map<int, int> succ;
  for (int t : c.vertex_triangles[v]) {
    const auto& tri = s.triangles[t];
    for (int i = 0; i < 3; ++i)
      if (tri[i] == v) {
        const int a = tri[(i + 1) % 3], b = tri[(i + 2) % 3];
        if (!succ.emplace(a, b).second) return {};
      }
  }
  if (succ.empty()) return {};
  std::vector<int> cycle;
  int start = succ.begin()->first, cur = start;
  do {
    cycle.push_back(cur);
    auto it = succ.find(cur);
    if (it == succ.end() || cycle.size() > succ.size()) return {};
    cur = it->second;
  } while (cur != start);
  if (cycle.size() != succ.size()) return {};
  return cycle;
}

bool lower(const SurfaceComplex& s, int u, int v) { return s.f[u] < s.f[v] || (s.f[u] == s.f[v] && u < v); }

std::string value_str(const Rational& r) { return format_rational(r); }

}  // namespace

int SurfaceComplex::index_of(int id) const {
  auto it = std::find(ids.begin(), ids.end(), id);
  return it == ids.end() ? -1 : static_cast<int>(it - ids.begin());
}

int Connectivity::edge_index(int u, int v) const {
  auto it = edge_lookup.find(pair_key(u, v));
  return it == edge_lookup.end() ? -1 : it->second;
}

Connectivity build_connectivity(const SurfaceComplex& s) {
  Connectivity c;
  c.vertex_triangles.resize(s.vertex_count());
  c.triangle_edges.resize(s.triangle_count());
  for (std::size_t t = 0; t < s.triangle_count(); ++t) {
    const auto& tri = s.triangles[t];
    for (int i = 0; i < 3; ++i) {
      const int u = tri[(i + 1) % 3], v = tri[(i + 2) % 3];
      auto [it, inserted] = c.edge_lookup.emplace(pair_key(u, v), static_cast<int>(c.edges.size()));
      if (inserted) {
        c.edges.push_back({std::min(u, v), std::max(u, v)});
        c.edge_triangles.emplace_back();
      }
      c.edge_triangles[it->second].push_back(static_cast<int>(t));
      c.triangle_edges[t][i] = it->second;
      c.vertex_triangles[tri[i]].push_back(static_cast<int>(t));
    }
  }
  return c;
}

std::uint64_t TriangleLookup::key(int a, int b, int c) {
  std::array<int, 3> k{a, b, c};
  std::sort(k.begin(), k.end());
  return (static_cast<std::uint64_t>(k[0]) << 42) | (static_cast<std::uint64_t>(k[1]) << 21) |
         static_cast<std::uint64_t>(k[2]);
}

TriangleLookup::TriangleLookup(const SurfaceComplex& s) {
  map_.reserve(s.triangle_count() * 2);
  for (std::size_t t = 0; t < s.triangle_count(); ++t) {
    const auto& tri = s.triangles[t];
    map_.emplace(key(tri[0], tri[1], tri[2]), static_cast<int>(t));
  }
}

int TriangleLookup::find(int a, int b, int c) const {
  if (a < 0 || b < 0 || c < 0) return -1;
  auto it = map_.find(key(a, b, c));
  return it == map_.end() ? -1 : it->second;
}

int orientation_sign(const std::array<int, 3>& tri, int a, int b, int c) {
  for (int r = 0; r < 3; ++r)
    if (tri[r] == a) {
      if (tri[(r + 1) % 3] == b && tri[(r + 2) % 3] == c) return 1;
      if (tri[(r + 1) % 3] == c && tri[(r + 2) % 3] == b) return -1;
    }
  return 0;
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::BadTriangle: return "bad triangle";
    case ViolationKind::AreaCount: return "area count mismatch";
    case ViolationKind::NonPositiveArea: return "non-positive area";
    case ViolationKind::BoundaryEdge: return "boundary edge";
    case ViolationKind::NonManifoldEdge: return "non-manifold edge";
    case ViolationKind::InconsistentOrientation: return "inconsistent orientation";
    case ViolationKind::NonManifoldVertex: return "non-manifold vertex";
    case ViolationKind::Disconnected: return "disconnected";
    case ViolationKind::InvolutionIncomplete: return "involution incomplete";
    case ViolationKind::NotAnInvolution: return "not an involution";
    case ViolationKind::FixedVertex: return "fixed vertex";
    case ViolationKind::TriangleNotMapped: return "triangle not mapped";
    case ViolationKind::OrientationPreserved: return "orientation preserved";
    case ViolationKind::FunctionNotOdd: return "function not odd";
    case ViolationKind::AreaNotEven: return "area not even";
    case ViolationKind::DuplicateValues: return "duplicate f-values";
    case ViolationKind::ZeroValue: return "zero f-value";
  }
  return "unknown";
}

bool ValidationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == kind; });
}

ValidationReport validate_surface(const SurfaceComplex& s) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, std::string msg, std::vector<int> ids = {}) {
    report.violations.push_back({kind, std::move(msg), std::move(ids)});
  };
  const int n = static_cast<int>(s.vertex_count());
  auto id = [&](int v) { return s.ids[v]; };

  bool triangles_ok = true;
  for (std::size_t t = 0; t < s.triangle_count(); ++t) {
    const auto& tri = s.triangles[t];
    bool bad = false;
    for (int v : tri) bad |= v < 0 || v >= n;
    if (!bad) bad = tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2];
    if (bad) {
      triangles_ok = false;
      add(ViolationKind::BadTriangle, "triangle " + std::to_string(t) + " is degenerate or references unknown vertices",
          {static_cast<int>(t)});
    }
  }
  if (s.areas.size() != s.triangle_count())
    add(ViolationKind::AreaCount, "expected " + std::to_string(s.triangle_count()) + " areas, got " +
                                      std::to_string(s.areas.size()));
  for (std::size_t t = 0; t < std::min(s.areas.size(), s.triangle_count()); ++t)
    if (s.areas[t] <= 0)
      add(ViolationKind::NonPositiveArea, "triangle " + std::to_string(t) + " has non-positive area",
          {static_cast<int>(t)});
  if (!triangles_ok) return report;

  const Connectivity c = build_connectivity(s);

  // closed, consistently oriented
  for (std::size_t e = 0; e < c.edges.size(); ++e) {
    const auto [u, v] = c.edges[e];
    const auto& ts = c.edge_triangles[e];
    if (ts.size() == 1) {
      add(ViolationKind::BoundaryEdge, "edge (" + std::to_string(id(u)) + "," + std::to_string(id(v)) +
                                           ") lies in one triangle", {id(u), id(v)});
    } else if (ts.size() > 2) {
      add(ViolationKind::NonManifoldEdge, "edge (" + std::to_string(id(u)) + "," + std::to_string(id(v)) +
                                              ") lies in " + std::to_string(ts.size()) + " triangles",
          {id(u), id(v)});
    } else {
      auto dir = [&](int t) {
        const auto& tri = s.triangles[t];
        for (int i = 0; i < 3; ++i)
          if (tri[i] == u && tri[(i + 1) % 3] == v) return 1;
        return -1;
      };
      if (dir(ts[0]) == dir(ts[1]))
        add(ViolationKind::InconsistentOrientation, "edge (" + std::to_string(id(u)) + "," + std::to_string(id(v)) +
                                                        ") has the same induced orientation in both triangles",
            {id(u), id(v)});
    }
  }
  const bool edges_manifold = !report.has(ViolationKind::BoundaryEdge) && !report.has(ViolationKind::NonManifoldEdge);
  if (edges_manifold)
    for (int v = 0; v < n; ++v)
      if (!c.vertex_triangles[v].empty() && vertex_link(s, c, v).empty())
        add(ViolationKind::NonManifoldVertex, "link of vertex " + std::to_string(id(v)) + " is not a single cycle",
            {id(v)});

  // connectivity through shared edges, and no isolated vertices
  {
    UnionFind uf(s.triangle_count());
    for (const auto& ts : c.edge_triangles)
      for (std::size_t i = 1; i < ts.size(); ++i) uf.unite(ts[0], ts[i]);
    std::size_t comps = s.triangle_count() == 0 ? 0 : uf.count();
    if (comps != 1)
      add(ViolationKind::Disconnected, "triangle adjacency graph has " + std::to_string(comps) + " components");
    for (int v = 0; v < n; ++v)
      if (c.vertex_triangles[v].empty())
        add(ViolationKind::Disconnected, "vertex " + std::to_string(id(v)) + " lies in no triangle", {id(v)});
  }

  // involution
  bool inv_ok = s.involution.size() == static_cast<std::size_t>(n);
  if (!inv_ok) add(ViolationKind::InvolutionIncomplete, "involution does not cover every vertex");
  for (int v = 0; inv_ok && v < n; ++v) {
    const int w = s.involution[v];
    if (w < 0 || w >= n) {
      add(ViolationKind::InvolutionIncomplete, "vertex " + std::to_string(id(v)) + " has no image", {id(v)});
      inv_ok = false;
    }
  }
  if (inv_ok) {
    for (int v = 0; v < n; ++v) {
      const int w = s.involution[v];
      if (w == v) add(ViolationKind::FixedVertex, "vertex " + std::to_string(id(v)) + " is fixed", {id(v)});
      if (s.involution[w] != v)
        add(ViolationKind::NotAnInvolution, "I(I(" + std::to_string(id(v)) + ")) != " + std::to_string(id(v)),
            {id(v)});
      if (s.f[w] != -s.f[v] && v < w)
        add(ViolationKind::FunctionNotOdd, "f(I(" + std::to_string(id(v)) + ")) != -f(" + std::to_string(id(v)) + ")",
            {id(v), id(w)});
    }
    const TriangleLookup lookup(s);
    for (std::size_t t = 0; t < s.triangle_count(); ++t) {
      const auto& tri = s.triangles[t];
      const int a = s.involution[tri[0]], b = s.involution[tri[1]], cc = s.involution[tri[2]];
      const int img = lookup.find(a, b, cc);
      if (img < 0) {
        add(ViolationKind::TriangleNotMapped, "image of triangle " + std::to_string(t) + " is not a triangle",
            {static_cast<int>(t)});
        continue;
      }
      if (orientation_sign(s.triangles[img], a, b, cc) != -1)
        add(ViolationKind::OrientationPreserved, "involution preserves the orientation of triangle " + std::to_string(t),
            {static_cast<int>(t)});
      if (s.areas.size() == s.triangle_count() && s.areas[img] != s.areas[t] && static_cast<int>(t) < img)
        add(ViolationKind::AreaNotEven, "area of triangle " + std::to_string(t) + " differs from its image",
            {static_cast<int>(t), img});
    }
  }

  // genericity of values
  {
    std::map<Rational, std::vector<int>> by_value;
    for (int v = 0; v < n; ++v) by_value[s.f[v]].push_back(id(v));
    for (auto& [value, vs] : by_value) {
      if (vs.size() > 1)
        add(ViolationKind::DuplicateValues,
            "value " + value_str(value) + " taken at " + std::to_string(vs.size()) + " vertices", vs);
      if (value == 0)
        for (int vid : vs) add(ViolationKind::ZeroValue, "vertex " + std::to_string(vid) + " has f = 0", {vid});
    }
  }
  return report;
}

TopologyInvariants topology_invariants(const SurfaceComplex& s) {
  const Connectivity c = build_connectivity(s);
  const long chi = static_cast<long>(s.vertex_count()) - static_cast<long>(c.edges.size()) +
                   static_cast<long>(s.triangle_count());
  if (chi % 2 != 0)
    throw PreconditionError("odd Euler characteristic " + std::to_string(chi) + " is impossible for a free involution");
  TopologyInvariants out;
  out.euler_cover = chi;
  out.betti1_cover = 2 - chi;
  out.euler_quotient = chi / 2;
  out.betti1_quotient = 1 - chi / 2;
  return out;
}

std::string to_string(VertexTag tag) {
  switch (tag) {
    case VertexTag::Regular: return "regular";
    case VertexTag::Minimum: return "min";
    case VertexTag::Maximum: return "max";
    case VertexTag::Saddle: return "saddle";
    case VertexTag::Degenerate: return "degenerate";
  }
  return "unknown";
}

std::size_t CriticalReport::count(VertexTag tag) const {
  return static_cast<std::size_t>(std::count(tags.begin(), tags.end(), tag));
}

CriticalReport classify_critical_vertices(const SurfaceComplex& s) {
  const Connectivity c = build_connectivity(s);
  const int n = static_cast<int>(s.vertex_count());
  CriticalReport report;
  report.tags.assign(n, VertexTag::Regular);
  report.lower_link_components.assign(n, 0);
  for (int v = 0; v < n; ++v) {
    const auto link = vertex_link(s, c, v);
    const std::size_t k = link.size();
    std::size_t lower_count = 0, runs = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const bool lo = lower(s, link[i], v);
      lower_count += lo;
      if (lo && !lower(s, link[(i + k - 1) % k], v)) ++runs;
    }
    if (lower_count == k && k > 0) runs = 1;
    report.lower_link_components[v] = static_cast<int>(runs);
    VertexTag tag = VertexTag::Regular;
    if (runs == 0)
      tag = VertexTag::Minimum;
    else if (lower_count == k)
      tag = VertexTag::Maximum;
    else if (runs == 2)
      tag = VertexTag::Saddle;
    else if (runs >= 3)
      tag = VertexTag::Degenerate;
    report.tags[v] = tag;
    if (tag != VertexTag::Regular) report.critical_values.push_back(s.f[v]);
    if (tag == VertexTag::Degenerate)
      report.violations.push_back("degenerate vertex " + std::to_string(s.ids[v]) + " (" + std::to_string(runs) +
                                  " lower-link components)");
  }
  std::sort(report.critical_values.begin(), report.critical_values.end());
  return report;
}

std::vector<std::string> check_simple_morse_odd(const SurfaceComplex& s) {
  std::vector<std::string> out = classify_critical_vertices(s).violations;
  // Genericity is required of every vertex value, so every value counts as a
  // potential critical value here.
  std::map<Rational, int> counts;
  for (const auto& v : s.f) ++counts[v];
  for (const auto& [value, k] : counts) {
    if (k > 1) out.push_back("duplicate critical value " + value_str(value) + " at " + std::to_string(k) + " vertices");
    if (value == 0) out.push_back("zero value at " + std::to_string(k) + " vertices");
  }
  return out;
}

SurfaceComplex perturb_to_simple(const SurfaceComplex& s, const Rational& eps, std::uint64_t seed) {
  if (eps <= 0) throw PreconditionError("perturbation size must be positive");
  if (classify_critical_vertices(s).count(VertexTag::Degenerate) > 0)
    throw PreconditionError("link-degenerate vertex");
  if (check_simple_morse_odd(s).empty()) return s;

  const int n = static_cast<int>(s.vertex_count());
  std::map<Rational, int> counts;
  for (const auto& v : s.f) ++counts[v];

  // Perturbations stay below half the smallest gap between distinct values,
  // so the order of already separated values is kept.
  Rational bound = eps;
  {
    std::vector<Rational> distinct;
    for (const auto& [value, k] : counts) distinct.push_back(value);
    for (std::size_t i = 1; i < distinct.size(); ++i) bound = std::min(bound, Rational((distinct[i] - distinct[i - 1]) / 3));
  }

  std::vector<int> reps;
  for (int v = 0; v < n; ++v) {
    const int w = s.involution[v];
    if (v < w && (counts[s.f[v]] > 1 || s.f[v] == 0)) reps.push_back(v);
  }

  Rng rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    SurfaceComplex out = s;
    for (int v : reps) {
      Rational delta = rng.uniform_rational(0, bound, 30);
      if (rng.uniform_int(0, 1) == 1) delta = -delta;
      out.f[v] += delta;
      out.f[s.involution[v]] -= delta;
    }
    if (check_simple_morse_odd(out).empty()) return out;
  }
  throw PreconditionError("perturbation did not reach a simple Morse function");
}

}  // namespace reebinv
