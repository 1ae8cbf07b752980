#include "reebinv/random_graph.hpp"

#include <algorithm>
#include <numeric>

#include "reebinv/union_find.hpp"

namespace reebinv {

EdgeMeasureProfile linear_density_profile(const std::vector<Rational>& knots, const std::vector<Rational>& density) {
  if (knots.size() < 2 || knots.size() != density.size()) throw PreconditionError("density needs matching knots");
  EdgeMeasureProfile p;
  p.lo = knots.front();
  p.hi = knots.back();
  Rational start_mass = 0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const Rational& a = knots[i];
    const Rational& b = knots[i + 1];
    // m(t) = M + rho_a (t - a) + s (t - a)^2
    const Rational s = (density[i + 1] - density[i]) / (2 * (b - a));
    p.pieces.push_back({s, density[i] - 2 * s * a, start_mass - density[i] * a + s * a * a});
    if (i + 2 < knots.size()) p.breaks.push_back(b);
    start_mass = p.pieces.back()(b);
  }
  return p;
}

namespace {

std::vector<Rational> sorted_interior(Rng& rng, const Rational& lo, const Rational& hi, int count) {
  std::vector<Rational> out;
  while (static_cast<int>(out.size()) < count) {
    Rational t = rng.uniform_rational(lo, hi, 8);
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rational random_density(Rng& rng) { return rng.uniform_rational(ratio(1, 4), 4, 6); }

EdgeMeasureProfile random_profile(Rng& rng, const Rational& lo, const Rational& hi, int max_knots) {
  std::vector<Rational> knots{lo};
  for (auto& t : sorted_interior(rng, lo, hi, static_cast<int>(rng.uniform_int(0, max_knots)))) knots.push_back(t);
  knots.push_back(hi);
  std::vector<Rational> density;
  for (std::size_t i = 0; i < knots.size(); ++i) density.push_back(random_density(rng));
  return linear_density_profile(knots, density);
}

// Density symmetric about 0 on [lo, -lo].
EdgeMeasureProfile symmetric_profile(Rng& rng, const Rational& lo, int max_knots) {
  std::vector<Rational> half{lo};
  for (auto& t : sorted_interior(rng, lo, 0, static_cast<int>(rng.uniform_int(0, max_knots)))) half.push_back(t);
  std::vector<Rational> rho;
  for (std::size_t i = 0; i < half.size(); ++i) rho.push_back(random_density(rng));
  std::vector<Rational> knots = half, density = rho;
  knots.push_back(0);
  density.push_back(random_density(rng));
  for (std::size_t i = half.size(); i-- > 0;) {
    knots.push_back(-half[i]);
    density.push_back(rho[i]);
  }
  EdgeMeasureProfile p = linear_density_profile(knots, density);
  p.simplify();
  return p;
}

struct HalfEdge {
  int tail;
  int head;  // -1 while the strand is open
};

}  // namespace

MeasuredReebGraph random_reeb_graph(Rng& rng, const RandomGraphOptions& options) {
  for (;;) {
    const int k = static_cast<int>(rng.uniform_int(1, options.max_lower_nodes));
    std::vector<Rational> values = sorted_interior(rng, -8, 0, k);

    std::vector<HalfEdge> lower;
    std::vector<int> open;  // indices into lower
    bool ok = true;
    for (int n = 0; n < k && ok; ++n) {
      enum { Min, Join, Split, Cap } type;
      const std::int64_t r = rng.uniform_int(0, 9);
      if (open.empty()) type = Min;
      else if (r < 3) type = Min;
      else if (r < 6 && open.size() >= 2) type = Join;
      else if (r < 9) type = Split;
      else type = open.size() >= 2 ? Cap : Split;
      auto close_random = [&]() {
        const auto pick = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(open.size()) - 1));
        lower[open[pick]].head = n;
        open.erase(open.begin() + static_cast<std::ptrdiff_t>(pick));
      };
      auto start = [&]() {
        open.push_back(static_cast<int>(lower.size()));
        lower.push_back({n, -1});
      };
      switch (type) {
        case Min: start(); break;
        case Join: close_random(); close_random(); start(); break;
        case Split: close_random(); start(); start(); break;
        case Cap: close_random(); break;
      }
    }
    if (open.empty()) continue;

    // Pair the strands crossing level 0: self-paired strands become fixed edges.
    std::shuffle(open.begin(), open.end(), rng.engine());
    std::vector<int> partner(open.size());
    for (std::size_t i = 0; i < open.size();) {
      if (i + 1 < open.size() && rng.uniform_int(0, 1) == 1) {
        partner[i] = static_cast<int>(i + 1);
        partner[i + 1] = static_cast<int>(i);
        i += 2;
      } else {
        partner[i] = static_cast<int>(i);
        i += 1;
      }
    }

    MeasuredReebGraph g;
    g.measured = true;
    // lower node n -> index n, its mirror -> k + n
    for (int n = 0; n < k; ++n) g.nodes.push_back({n, values[n], -1});
    for (int n = 0; n < k; ++n) g.nodes.push_back({k + n, -values[n], -1});
    g.node_involution.resize(2 * k);
    for (int n = 0; n < k; ++n) {
      g.node_involution[n] = k + n;
      g.node_involution[k + n] = n;
    }
    std::vector<int> closed;
    for (std::size_t e = 0; e < lower.size(); ++e)
      if (lower[e].head >= 0) closed.push_back(static_cast<int>(e));
    for (int e : closed) {
      const int id = static_cast<int>(g.edges.size());
      const Rational lo = values[lower[e].tail], hi = values[lower[e].head];
      EdgeMeasureProfile p = random_profile(rng, lo, hi, options.max_knots);
      g.edges.push_back({id, lower[e].tail, lower[e].head, p});
      g.edges.push_back({id + 1, k + lower[e].head, k + lower[e].tail, p.mirrored()});
      g.edge_involution.push_back(id + 1);
      g.edge_involution.push_back(id);
    }
    for (std::size_t i = 0; i < open.size(); ++i) {
      const int j = partner[i];
      if (static_cast<std::size_t>(j) < i) continue;
      const int u = lower[open[i]].tail;
      const int id = static_cast<int>(g.edges.size());
      if (static_cast<std::size_t>(j) == i) {
        g.edges.push_back({id, u, k + u, symmetric_profile(rng, values[u], options.max_knots)});
        g.edge_involution.push_back(id);
      } else {
        const int w = lower[open[j]].tail;
        EdgeMeasureProfile p = random_profile(rng, values[u], -values[w], options.max_knots);
        g.edges.push_back({id, u, k + w, p});
        g.edges.push_back({id + 1, w, k + u, p.mirrored()});
        g.edge_involution.push_back(id + 1);
        g.edge_involution.push_back(id);
      }
    }

    UnionFind uf(g.nodes.size());
    for (const auto& e : g.edges) uf.unite(e.tail, e.head);
    if (uf.count() != 1) continue;
    const int betti = static_cast<int>(g.edges.size()) - static_cast<int>(g.nodes.size()) + 1;
    if (betti > options.max_betti) continue;
    return g;
  }
}

MeasuredReebGraph relabeled(const MeasuredReebGraph& g, Rng& rng, GraphMapping* map) {
  std::vector<int> node_perm(g.nodes.size()), edge_perm(g.edges.size());
  std::iota(node_perm.begin(), node_perm.end(), 0);
  std::iota(edge_perm.begin(), edge_perm.end(), 0);
  std::shuffle(node_perm.begin(), node_perm.end(), rng.engine());
  std::shuffle(edge_perm.begin(), edge_perm.end(), rng.engine());
  const int id_shift = static_cast<int>(rng.uniform_int(100, 1000));

  MeasuredReebGraph out;
  out.measured = g.measured;
  out.nodes.resize(g.nodes.size());
  out.edges.resize(g.edges.size());
  for (std::size_t n = 0; n < g.nodes.size(); ++n) {
    out.nodes[node_perm[n]] = g.nodes[n];
    out.nodes[node_perm[n]].id = id_shift + node_perm[n];
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    ReebEdge edge = g.edges[e];
    edge.id = id_shift + edge_perm[e];
    edge.tail = node_perm[edge.tail];
    edge.head = node_perm[edge.head];
    out.edges[edge_perm[e]] = std::move(edge);
  }
  if (g.has_involution()) {
    out.node_involution.resize(g.nodes.size());
    out.edge_involution.resize(g.edges.size());
    for (std::size_t n = 0; n < g.nodes.size(); ++n) out.node_involution[node_perm[n]] = node_perm[g.node_involution[n]];
    for (std::size_t e = 0; e < g.edges.size(); ++e) out.edge_involution[edge_perm[e]] = edge_perm[g.edge_involution[e]];
  }
  if (map) *map = {node_perm, edge_perm};
  return out;
}

MeasuredReebGraph path_graph(const Rational& mass) {
  MeasuredReebGraph g;
  g.measured = true;
  g.nodes = {{0, -1, -1}, {1, 1, -1}};
  g.edges = {{0, 0, 1, EdgeMeasureProfile::uniform(-1, 1, mass)}};
  g.node_involution = {1, 0};
  g.edge_involution = {0};
  return g;
}

MeasuredReebGraph klein_graph(bool swap_handles) {
  MeasuredReebGraph g;
  g.measured = true;
  g.nodes = {{0, -3, -1}, {1, -1, -1}, {2, 1, -1}, {3, 3, -1}};
  g.edges = {{0, 0, 1, EdgeMeasureProfile::uniform(-3, -1, 2)},
             {1, 1, 2, EdgeMeasureProfile::uniform(-1, 1, 3)},
             {2, 1, 2, EdgeMeasureProfile::uniform(-1, 1, 3)},
             {3, 2, 3, EdgeMeasureProfile::uniform(1, 3, 2)}};
  g.node_involution = {3, 2, 1, 0};
  g.edge_involution = swap_handles ? std::vector<int>{3, 2, 1, 0} : std::vector<int>{3, 1, 2, 0};
  return g;
}

}  // namespace reebinv
