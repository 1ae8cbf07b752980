#pragma once

#include <vector>

#include "reebinv/linalg.hpp"
#include "reebinv/reeb.hpp"

namespace reebinv {

/// A cycle as integer coefficients on the (dense) edges.
using EdgeChain = std::vector<int>;

struct InvolutionHomology {
  int betti1 = 0;
  int even_dim = 0;  ///< multiplicity of eigenvalue +1 of the induced map on H1
  int odd_dim = 0;   ///< multiplicity of eigenvalue -1
  int fix_count = 0;
  std::vector<EdgeChain> cycle_basis;  ///< fundamental cycles, one per co-tree edge
  std::vector<int> cotree_edges;
  RationalMatrix action;  ///< column j = image of cycle j in the basis
};

/// E - V + 1; throws PreconditionError on a disconnected graph.
int graph_first_betti(const MeasuredReebGraph& g);

/// Fundamental-cycle basis from the spanning tree built by scanning edges in
/// ascending id order.
std::vector<EdgeChain> fundamental_cycles(const MeasuredReebGraph& g, std::vector<int>* cotree = nullptr);

/// Number of involution-invariant edges; throws when a node is fixed.
int count_fixed_points(const MeasuredReebGraph& g);

InvolutionHomology involution_h1_action(const MeasuredReebGraph& g);

/// d = (fix + b1 - 1) / 2, cross-checked against the odd eigenspace and the
/// bounds (b1 - 1)/2 <= d <= b1. Throws on a parity violation or when
/// b1(graph) != b1_quotient.
int orbit_moduli_dimension(const MeasuredReebGraph& g, int b1_quotient);

}  // namespace reebinv
