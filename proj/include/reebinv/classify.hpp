#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reebinv/circulation.hpp"
#include "reebinv/mesh.hpp"
#include "reebinv/reeb.hpp"

namespace reebinv {

/// Dense node and edge correspondence from the first graph to the second.
struct GraphMapping {
  std::vector<int> nodes;
  std::vector<int> edges;
};

/// Cheap isomorphism invariants, compared before any search.
struct InvariantVector {
  int betti1 = 0;
  int fix_count = 0;
  std::vector<Rational> node_values;  ///< ascending
  std::vector<Rational> masses;       ///< ascending
  bool operator==(const InvariantVector&) const = default;
};

InvariantVector invariant_vector(const MeasuredReebGraph& g);

/// Isomorphism commuting with the involutions and preserving f exactly and the
/// measure exactly (or to within `tol` in sup-norm of the cumulative profiles).
std::optional<GraphMapping> iso_measured_reeb(const MeasuredReebGraph& g1, const MeasuredReebGraph& g2,
                                              const std::optional<Rational>& tol = std::nullopt);

/// As iso_measured_reeb, additionally matching the circulation values at edge tails.
std::optional<GraphMapping> iso_circulation_graph(const CirculationGraph& c1, const CirculationGraph& c2,
                                                  const std::optional<Rational>& tol = std::nullopt);

struct CasimirTable {
  std::vector<unsigned> orders;
  std::vector<std::vector<Rational>> per_edge;  ///< [edge][order index]
  std::vector<Rational> global;                 ///< on the double cover
  std::vector<std::optional<Rational>> quotient;  ///< global / 2 for even orders
};

/// Throws PreconditionError for a negative order.
CasimirTable casimir_moments(const MeasuredReebGraph& g, const std::vector<int>& orders);

/// Empty iff 2 b1(graph) = b1(mesh) and total mass = total area.
std::vector<std::string> compatibility_check(const MeasuredReebGraph& g, const SurfaceComplex& s);

}  // namespace reebinv
