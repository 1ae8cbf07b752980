#pragma once

#include <string>
#include <vector>

#include "reebinv/mesh.hpp"
#include "reebinv/reeb.hpp"

namespace reebinv {

/// Measured Reeb graph with involution plus an even circulation function,
/// stored as its limit at the tail of every edge.
struct CirculationGraph {
  MeasuredReebGraph base;
  std::vector<Rational> cref;

  /// C at level t on edge e: cref(e) + integral of s dm(s) from the tail up to t.
  Rational value(int e, const Rational& t) const;
  Rational head_limit(int e) const;
};

/// Integral of f dmu over the edge.
Rational edge_flux(const EdgeMeasureProfile& p);

/// Per node: sum of incoming head limits minus sum of outgoing tail limits.
std::vector<Rational> kirchhoff_residuals(const CirculationGraph& c);
/// Per edge: C(tail limit of e) - C(head limit of iota(e)).
std::vector<Rational> evenness_residuals(const CirculationGraph& c);

struct CirculationSpace {
  std::vector<Rational> particular;         ///< cref per edge
  std::vector<std::vector<Rational>> basis;  ///< homogeneous solutions, cref deltas per edge
};

/// Affine space of even circulation functions. Throws PreconditionError
/// ("inconsistent system") if the constraints admit no solution.
CirculationSpace solve_circulation_space(const MeasuredReebGraph& g);

/// Value per mesh edge, oriented from the lower to the higher vertex index of
/// the matching Connectivity edge. Reversing orientation flips the sign.
struct DiscreteOneForm {
  std::vector<Rational> values;

  static DiscreteOneForm zero(const Connectivity& c) { return {std::vector<Rational>(c.edges.size())}; }
  Rational oriented(const Connectivity& c, int u, int v) const;
  void set_oriented(const Connectivity& c, int u, int v, const Rational& value);
  DiscreteOneForm operator+(const DiscreteOneForm& o) const;
  DiscreteOneForm scaled(const Rational& k) const;
};

bool is_even(const SurfaceComplex& s, const Connectivity& c, const DiscreteOneForm& alpha);

/// Differential of a vertex function: alpha(u, v) = h(v) - h(u).
DiscreteOneForm exact_form(const SurfaceComplex& s, const Connectivity& c, const std::vector<Rational>& h);

/// Per triangle: circulation of alpha around the stored boundary divided by the area.
std::vector<Rational> discrete_curl(const SurfaceComplex& s, const DiscreteOneForm& alpha);

/// Mean of the three vertex values of every triangle.
std::vector<Rational> triangle_means(const SurfaceComplex& s);

/// Even 1-form whose discrete curl equals `target` (which must be odd under the
/// involution). Built along a dual spanning tree, then symmetrised.
DiscreteOneForm solve_primitive(const SurfaceComplex& s, const std::vector<Rational>& target);

struct LevelComponent {
  std::vector<int> crossing_edges;  ///< sorted Connectivity edge indices
  std::vector<int> triangles;
};

/// Components of the level set {f = t}, ordered by their crossing edge lists.
std::vector<LevelComponent> level_components(const SurfaceComplex& s, const Rational& t);

/// Integral of the Whitney interpolant of alpha along one level component.
/// Level curves are oriented so that f increases to their right.
Rational level_cycle_circulation(const SurfaceComplex& s, const DiscreteOneForm& alpha, const Rational& t,
                                 int component);

/// Integral over the level-t chords of the given triangles.
Rational chord_circulation(const SurfaceComplex& s, const Connectivity& c, const DiscreteOneForm& alpha,
                           const Rational& t, const std::vector<int>& triangles);

struct CosetCirculation {
  CirculationGraph graph;
  /// Per edge: discrete head limit minus cref - flux. Nonzero because piecewise
  /// constant curl only approximates f on each triangle.
  std::vector<Rational> stokes_defect;
  Rational max_defect;
};

/// Circulation graph of the coset [alpha]. Requires discrete_curl(alpha) to equal
/// triangle_means(s) exactly.
CosetCirculation coset_to_circulation_graph(const SurfaceComplex& s, const DiscreteOneForm& alpha,
                                            const MeasuredReebGraph& g);

}  // namespace reebinv
