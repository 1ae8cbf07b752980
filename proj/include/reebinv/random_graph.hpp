#pragma once

#include "reebinv/classify.hpp"
#include "reebinv/reeb.hpp"

namespace reebinv {

struct RandomGraphOptions {
  int max_betti = 6;
  int max_lower_nodes = 8;  ///< nodes below level 0; the upper half mirrors them
  int max_knots = 3;        ///< interior density knots per edge
};

/// Random valid measured Reeb graph with involution. Built as a lower half below
/// level 0 whose open strands are closed up by the mirror image. Densities are
/// piecewise linear and positive, so profiles are piecewise quadratic.
MeasuredReebGraph random_reeb_graph(Rng& rng, const RandomGraphOptions& options = {});

/// Cumulative profile of the piecewise linear density through (knots[i], density[i]).
EdgeMeasureProfile linear_density_profile(const std::vector<Rational>& knots, const std::vector<Rational>& density);

/// Copy with nodes and edges permuted and ids reassigned; `map` receives old -> new dense indices.
MeasuredReebGraph relabeled(const MeasuredReebGraph& g, Rng& rng, GraphMapping* map = nullptr);

/// Single edge on [-1, 1] carrying uniform mass `mass`; iota reverses it.
MeasuredReebGraph path_graph(const Rational& mass = 4);

/// Circle graph min(-3) -> s(-1) => s(1) -> max(3) with uniform masses. With
/// `swap_handles` iota exchanges the two parallel edges (no fixed edge), otherwise
/// it keeps each of them (two fixed edges).
MeasuredReebGraph klein_graph(bool swap_handles);

}  // namespace reebinv
