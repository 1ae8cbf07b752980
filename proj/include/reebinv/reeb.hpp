#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reebinv/mesh.hpp"
#include "reebinv/profile.hpp"

namespace reebinv {

struct ReebNode {
  int id = 0;
  Rational f;
  int vertex = -1;  ///< dense mesh vertex index when computed from a mesh
};

struct ReebEdge {
  int id = 0;
  int tail = 0;  ///< dense node index, lower end
  int head = 0;  ///< dense node index, upper end
  EdgeMeasureProfile profile;
};

/// Assignment of mesh triangle pieces to graph edges. The critical levels cut
/// every triangle into slabs; slab k of a triangle lies in the open band
/// (levels[k], levels[k+1]).
struct CellMap {
  std::vector<Rational> levels;
  std::vector<int> first_band;                 ///< per triangle
  std::vector<std::vector<int>> slab_edges;    ///< per triangle, dense edge index per spanned band

  /// Edge containing the piece of triangle t at regular level value; -1 when t misses it.
  int edge_at(int triangle, const Rational& value) const;
  int band_of(const Rational& value) const;
};

/// Reeb graph of an odd simple Morse function with its pushforward measure and
/// induced involution. Nodes and edges are addressed by dense index.
struct MeasuredReebGraph {
  std::vector<ReebNode> nodes;
  std::vector<ReebEdge> edges;
  std::vector<int> node_involution;  ///< empty until induced
  std::vector<int> edge_involution;
  bool measured = false;
  std::optional<CellMap> cellmap;

  bool has_involution() const { return !node_involution.empty(); }
  int valence(int node) const;
  Rational f_lo(int e) const { return nodes[edges[e].tail].f; }
  Rational f_hi(int e) const { return nodes[edges[e].head].f; }
  Rational mass(int e) const { return edges[e].profile.mass(); }
  Rational total_mass() const;
  int node_index(int id) const;
  int edge_index(int id) const;
};

/// Every violated invariant of a measured Reeb graph with involution.
std::vector<std::string> validate_graph(const MeasuredReebGraph& g);

/// Nodes, edges and cellmap by an ascending sweep over the critical levels.
/// Throws PreconditionError unless check_simple_morse_odd passes.
MeasuredReebGraph compute_reeb(const SurfaceComplex& s);

/// Pushes vertices and level components through the mesh involution.
MeasuredReebGraph induce_involution(const SurfaceComplex& s, MeasuredReebGraph g);

/// Exact per-edge cumulative measure from the triangle areas.
MeasuredReebGraph pushforward_measure(const SurfaceComplex& s, MeasuredReebGraph g);

/// compute_reeb, induce_involution and pushforward_measure in sequence.
MeasuredReebGraph build_measured_reeb(const SurfaceComplex& s);

/// Cumulative area of {f <= t} inside one triangle with vertex values v.
Rational triangle_sublevel_area(std::array<Rational, 3> values, const Rational& area, const Rational& t);

/// Brute-force level-set components, independent of the sweep.
struct LevelOracle {
  std::vector<Rational> levels;
  /// Per level: components, each the sorted list of crossing mesh edges.
  std::vector<std::vector<std::vector<int>>> components;
  /// Per consecutive level pair (i, i+1): component index pairs joined inside f^-1([t_i, t_{i+1}]).
  std::vector<std::vector<std::pair<int, int>>> adjacency;
};

/// Levels must be strictly increasing and avoid vertex values.
LevelOracle reeb_oracle(const SurfaceComplex& s, const std::vector<Rational>& levels);

}  // namespace reebinv
