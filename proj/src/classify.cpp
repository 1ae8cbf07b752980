#include "reebinv/classify.hpp"

#include <algorithm>
#include <functional>

#include "reebinv/graph_topology.hpp"

namespace reebinv {

InvariantVector invariant_vector(const MeasuredReebGraph& g) {
  InvariantVector v;
  v.betti1 = graph_first_betti(g);
  v.fix_count = g.has_involution() ? count_fixed_points(g) : 0;
  for (const auto& n : g.nodes) v.node_values.push_back(n.f);
  std::sort(v.node_values.begin(), v.node_values.end());
  if (g.measured)
    for (std::size_t e = 0; e < g.edges.size(); ++e) v.masses.push_back(g.mass(static_cast<int>(e)));
  std::sort(v.masses.begin(), v.masses.end());
  return v;
}

namespace {

using EdgePredicate = std::function<bool(int, int)>;

bool within(const Rational& a, const Rational& b, const std::optional<Rational>& tol) {
  return tol ? abs(a - b) <= *tol : a == b;
}

bool invariants_agree(const InvariantVector& a, const InvariantVector& b, const std::optional<Rational>& tol) {
  if (a.betti1 != b.betti1 || a.fix_count != b.fix_count || a.node_values != b.node_values) return false;
  if (a.masses.size() != b.masses.size()) return false;
  for (std::size_t i = 0; i < a.masses.size(); ++i)
    if (!within(a.masses[i], b.masses[i], tol)) return false;
  return true;
}

class IsoSearch {
 public:
  IsoSearch(const MeasuredReebGraph& g1, const MeasuredReebGraph& g2, EdgePredicate edge_ok)
      : g1_(g1), g2_(g2), edge_ok_(std::move(edge_ok)) {
    map_.nodes.assign(g1.nodes.size(), -1);
    map_.edges.assign(g1.edges.size(), -1);
    node_used_.assign(g2.nodes.size(), false);
    edge_used_.assign(g2.edges.size(), false);
    for (std::size_t n = 0; n < g1.nodes.size(); ++n) valence1_.push_back(g1.valence(static_cast<int>(n)));
    for (std::size_t n = 0; n < g2.nodes.size(); ++n) valence2_.push_back(g2.valence(static_cast<int>(n)));
  }

  std::optional<GraphMapping> run() {
    if (g1_.nodes.size() != g2_.nodes.size() || g1_.edges.size() != g2_.edges.size()) return std::nullopt;
    if (g1_.has_involution() != g2_.has_involution()) return std::nullopt;
    if (assign_node(0)) return map_;
    return std::nullopt;
  }

 private:
  bool involutive() const { return g1_.has_involution(); }

  bool assign_node(std::size_t n) {
    if (n == g1_.nodes.size()) return assign_edge(0);
    for (std::size_t m = 0; m < g2_.nodes.size(); ++m) {
      if (node_used_[m] || g2_.nodes[m].f != g1_.nodes[n].f || valence2_[m] != valence1_[n]) continue;
      if (involutive()) {
        const int partner = g1_.node_involution[n];
        if (map_.nodes[partner] >= 0 && map_.nodes[partner] != g2_.node_involution[m]) continue;
      }
      map_.nodes[n] = static_cast<int>(m);
      node_used_[m] = true;
      if (assign_node(n + 1)) return true;
      map_.nodes[n] = -1;
      node_used_[m] = false;
    }
    return false;
  }

  bool compatible(int e, int m) const {
    if (edge_used_[m]) return false;
    if (g2_.edges[m].tail != map_.nodes[g1_.edges[e].tail] || g2_.edges[m].head != map_.nodes[g1_.edges[e].head])
      return false;
    return edge_ok_(e, m);
  }

  bool assign_edge(std::size_t e) {
    if (e == g1_.edges.size()) return true;
    if (map_.edges[e] >= 0) return assign_edge(e + 1);
    const int ie = static_cast<int>(e);
    for (std::size_t m = 0; m < g2_.edges.size(); ++m) {
      const int im = static_cast<int>(m);
      if (!compatible(ie, im)) continue;
      map_.edges[e] = im;
      edge_used_[m] = true;
      bool ok = true;
      int partner = -1;
      if (involutive()) {
        partner = g1_.edge_involution[e];
        const int target = g2_.edge_involution[m];
        if (partner == ie) {
          ok = target == im;
        } else if (map_.edges[partner] >= 0) {
          ok = map_.edges[partner] == target;
          partner = -1;
        } else if (compatible(partner, target)) {
          map_.edges[partner] = target;
          edge_used_[target] = true;
        } else {
          ok = false;
          partner = -1;
        }
        if (partner == ie) partner = -1;
      }
      if (ok && assign_edge(e + 1)) return true;
      if (partner >= 0 && map_.edges[partner] >= 0) {
        edge_used_[map_.edges[partner]] = false;
        map_.edges[partner] = -1;
      }
      map_.edges[e] = -1;
      edge_used_[m] = false;
    }
    return false;
  }

  const MeasuredReebGraph& g1_;
  const MeasuredReebGraph& g2_;
  EdgePredicate edge_ok_;
  GraphMapping map_;
  std::vector<bool> node_used_, edge_used_;
  std::vector<int> valence1_, valence2_;
};

bool profiles_match(const EdgeMeasureProfile& a, const EdgeMeasureProfile& b, const std::optional<Rational>& tol) {
  if (a.lo != b.lo || a.hi != b.hi) return false;
  return tol ? sup_distance(a, b) <= *tol : sup_distance(a, b) == 0;
}

}  // namespace

std::optional<GraphMapping> iso_measured_reeb(const MeasuredReebGraph& g1, const MeasuredReebGraph& g2,
                                              const std::optional<Rational>& tol) {
  if (g1.nodes.size() != g2.nodes.size() || g1.edges.size() != g2.edges.size()) return std::nullopt;
  if (g1.measured != g2.measured) return std::nullopt;
  if (!invariants_agree(invariant_vector(g1), invariant_vector(g2), tol)) return std::nullopt;
  IsoSearch search(g1, g2, [&](int e, int m) {
    return !g1.measured || profiles_match(g1.edges[e].profile, g2.edges[m].profile, tol);
  });
  return search.run();
}

std::optional<GraphMapping> iso_circulation_graph(const CirculationGraph& c1, const CirculationGraph& c2,
                                                  const std::optional<Rational>& tol) {
  const auto& g1 = c1.base;
  const auto& g2 = c2.base;
  if (g1.nodes.size() != g2.nodes.size() || g1.edges.size() != g2.edges.size()) return std::nullopt;
  if (!invariants_agree(invariant_vector(g1), invariant_vector(g2), tol)) return std::nullopt;
  IsoSearch search(g1, g2, [&](int e, int m) {
    return profiles_match(g1.edges[e].profile, g2.edges[m].profile, tol) && within(c1.cref[e], c2.cref[m], tol);
  });
  return search.run();
}

CasimirTable casimir_moments(const MeasuredReebGraph& g, const std::vector<int>& orders) {
  CasimirTable table;
  for (int k : orders) {
    if (k < 0) throw PreconditionError("negative moment order " + std::to_string(k));
    table.orders.push_back(static_cast<unsigned>(k));
  }
  table.per_edge.resize(g.edges.size());
  table.global.assign(orders.size(), 0);
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    for (std::size_t i = 0; i < table.orders.size(); ++i) {
      Rational m = g.edges[e].profile.moment(table.orders[i]);
      table.global[i] += m;
      table.per_edge[e].push_back(std::move(m));
    }
  for (std::size_t i = 0; i < table.orders.size(); ++i)
    table.quotient.push_back(table.orders[i] % 2 == 0 ? std::optional<Rational>(table.global[i] / 2) : std::nullopt);
  return table;
}

std::vector<std::string> compatibility_check(const MeasuredReebGraph& g, const SurfaceComplex& s) {
  std::vector<std::string> out;
  int b1 = -1;
  try {
    b1 = graph_first_betti(g);
  } catch (const PreconditionError& e) {
    out.push_back(e.what());
  }
  try {
    const auto topo = topology_invariants(s);
    if (b1 >= 0 && 2 * b1 != topo.betti1_cover)
      out.push_back("first Betti number mismatch: 2*" + std::to_string(b1) + " != " + std::to_string(topo.betti1_cover));
  } catch (const PreconditionError& e) {
    out.push_back(e.what());
  }
  Rational area = 0;
  for (const auto& a : s.areas) area += a;
  const Rational mass = g.measured ? g.total_mass() : Rational(0);
  if (mass != area)
    out.push_back("total measure mismatch: " + format_rational(mass) + " != " + format_rational(area));
  return out;
}

}  // namespace reebinv
