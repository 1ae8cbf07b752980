#pragma once

#include "reebinv/mesh.hpp"
#include "reebinv/reeb.hpp"

namespace reebinv {

/// Equivariant mesh whose measured Reeb graph is isomorphic to g: node values and
/// edge masses exactly, profiles to within total-mass / 2^refinement. The part
/// below level 0 is assembled from ring cylinders, cone caps and pants, then
/// mirrored; crossing edges are closed by bands through level 0. Throws
/// PreconditionError for invalid graphs or non-positive masses.
SurfaceComplex realize_graph(const MeasuredReebGraph& g, int refinement);

}  // namespace reebinv
