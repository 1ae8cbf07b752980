#include "reebinv/graph_topology.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "reebinv/union_find.hpp"

namespace reebinv {

int graph_first_betti(const MeasuredReebGraph& g) {
  UnionFind uf(g.nodes.size());
  for (const auto& e : g.edges) uf.unite(e.tail, e.head);
  if (g.nodes.empty() || uf.count() != 1) throw PreconditionError("graph is disconnected");
  return static_cast<int>(g.edges.size()) - static_cast<int>(g.nodes.size()) + 1;
}

std::vector<EdgeChain> fundamental_cycles(const MeasuredReebGraph& g, std::vector<int>* cotree) {
  const int nn = static_cast<int>(g.nodes.size()), ne = static_cast<int>(g.edges.size());
  UnionFind uf(nn);
  std::vector<std::vector<std::pair<int, int>>> tree(nn);  // (neighbour, edge)
  std::vector<int> non_tree, by_id(ne);
  std::iota(by_id.begin(), by_id.end(), 0);
  std::sort(by_id.begin(), by_id.end(), [&](int a, int b) { return g.edges[a].id < g.edges[b].id; });
  for (int e : by_id) {
    const auto& edge = g.edges[e];
    if (uf.unite(edge.tail, edge.head)) {
      tree[edge.tail].push_back({edge.head, e});
      tree[edge.head].push_back({edge.tail, e});
    } else {
      non_tree.push_back(e);
    }
  }
  // root the tree at node 0: parent edge and depth
  std::vector<int> parent(nn, -1), parent_edge(nn, -1), depth(nn, 0);
  std::vector<int> stack{0};
  std::vector<bool> seen(nn, false);
  seen[0] = true;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (auto [w, e] : tree[v])
      if (!seen[w]) {
        seen[w] = true;
        parent[w] = v;
        parent_edge[w] = e;
        depth[w] = depth[v] + 1;
        stack.push_back(w);
      }
  }
  // signed coefficient of walking from child up to parent along the parent edge
  auto step_up = [&](int child) { return g.edges[parent_edge[child]].tail == child ? 1 : -1; };

  std::vector<EdgeChain> cycles;
  for (int c : non_tree) {
    EdgeChain z(ne, 0);
    z[c] = 1;
    // close the loop: walk from head(c) back to tail(c) through the tree
    int a = g.edges[c].head, b = g.edges[c].tail;
    std::vector<int> down;  // nodes on b's side, walked in reverse later
    while (depth[a] > depth[b]) {
      z[parent_edge[a]] += step_up(a);
      a = parent[a];
    }
    while (depth[b] > depth[a]) {
      down.push_back(b);
      b = parent[b];
    }
    while (a != b) {
      z[parent_edge[a]] += step_up(a);
      a = parent[a];
      down.push_back(b);
      b = parent[b];
    }
    for (int v : down) z[parent_edge[v]] -= step_up(v);
    cycles.push_back(std::move(z));
  }
  if (cotree) *cotree = non_tree;
  return cycles;
}

int count_fixed_points(const MeasuredReebGraph& g) {
  if (!g.has_involution()) throw PreconditionError("graph carries no involution");
  for (std::size_t n = 0; n < g.nodes.size(); ++n)
    if (g.node_involution[n] == static_cast<int>(n))
      throw PreconditionError("node " + std::to_string(g.nodes[n].id) + " is fixed by the involution");
  int fixed = 0;
  for (std::size_t e = 0; e < g.edges.size(); ++e) fixed += g.edge_involution[e] == static_cast<int>(e);
  return fixed;
}

InvolutionHomology involution_h1_action(const MeasuredReebGraph& g) {
  InvolutionHomology h;
  h.betti1 = graph_first_betti(g);
  h.fix_count = count_fixed_points(g);
  h.cycle_basis = fundamental_cycles(g, &h.cotree_edges);
  const int b = h.betti1;
  const int ne = static_cast<int>(g.edges.size());
  std::vector<int> cotree_pos(ne, -1);
  for (int i = 0; i < b; ++i) cotree_pos[h.cotree_edges[i]] = i;

  // iota_* e = -iota(e): the involution reverses edge orientation
  h.action = RationalMatrix(b, b);
  for (int j = 0; j < b; ++j)
    for (int e = 0; e < ne; ++e) {
      const int coeff = h.cycle_basis[j][e];
      if (coeff == 0) continue;
      const int image = g.edge_involution[e];
      if (cotree_pos[image] >= 0) h.action(cotree_pos[image], j) -= coeff;
    }
  const auto id = RationalMatrix::identity(b);
  h.even_dim = b - static_cast<int>(rank(h.action - id));
  h.odd_dim = b - static_cast<int>(rank(h.action + id));
  return h;
}

int orbit_moduli_dimension(const MeasuredReebGraph& g, int b1_quotient) {
  const InvolutionHomology h = involution_h1_action(g);
  if (h.betti1 != b1_quotient)
    throw PreconditionError("graph is not compatible: b1(graph) = " + std::to_string(h.betti1) +
                            " but b1(quotient) = " + std::to_string(b1_quotient));
  const int twice = h.fix_count + h.betti1 - 1;
  if (twice % 2 != 0) throw PreconditionError("parity violation: #Fix + b1 - 1 is odd");
  const int d = twice / 2;
  if (d != h.odd_dim) throw PreconditionError("closed formula disagrees with the odd eigenspace dimension");
  if (2 * d < h.betti1 - 1 || d > h.betti1) throw PreconditionError("dimension outside its admissible bounds");
  return d;
}

}  // namespace reebinv
