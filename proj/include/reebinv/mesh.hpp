#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "reebinv/rational.hpp"

namespace reebinv {

/// Triangulated closed oriented surface carrying a free orientation-reversing
/// involution, an odd vertex function and involution-invariant triangle areas.
/// Vertices are addressed by dense index; `ids` holds the external ids.
struct SurfaceComplex {
  std::vector<int> ids;
  std::vector<Rational> f;
  std::vector<std::array<int, 3>> triangles;  ///< cyclic order carries the orientation
  std::vector<Rational> areas;
  std::vector<int> involution;  ///< -1 where the input left the image unspecified

  std::size_t vertex_count() const { return f.size(); }
  std::size_t triangle_count() const { return triangles.size(); }
  int index_of(int id) const;
};

/// Derived incidence data. Edges are unordered vertex pairs (lo index first).
struct Connectivity {
  std::vector<std::array<int, 2>> edges;
  std::vector<std::vector<int>> edge_triangles;
  std::vector<std::array<int, 3>> triangle_edges;  ///< edge opposite to local vertex i is entry i
  std::vector<std::vector<int>> vertex_triangles;
  std::unordered_map<std::uint64_t, int> edge_lookup;

  int edge_index(int u, int v) const;
};

Connectivity build_connectivity(const SurfaceComplex& s);

enum class ViolationKind {
  BadTriangle,
  AreaCount,
  NonPositiveArea,
  BoundaryEdge,
  NonManifoldEdge,
  InconsistentOrientation,
  NonManifoldVertex,
  Disconnected,
  InvolutionIncomplete,
  NotAnInvolution,
  FixedVertex,
  TriangleNotMapped,
  OrientationPreserved,
  FunctionNotOdd,
  AreaNotEven,
  DuplicateValues,
  ZeroValue,
};

std::string to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string message;
  std::vector<int> ids;  ///< external vertex ids (or triangle indices for area entries)
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
};

/// Lists every violated structural invariant; never throws on bad data.
ValidationReport validate_surface(const SurfaceComplex& s);

struct TopologyInvariants {
  long euler_cover;      ///< chi(M)
  long betti1_cover;     ///< b1(M)
  long euler_quotient;   ///< chi(N)
  long betti1_quotient;  ///< b1(N) over the reals
  bool operator==(const TopologyInvariants&) const = default;
};

/// Throws PreconditionError when chi(M) is odd.
TopologyInvariants topology_invariants(const SurfaceComplex& s);

enum class VertexTag { Regular, Minimum, Maximum, Saddle, Degenerate };

std::string to_string(VertexTag tag);

struct CriticalReport {
  std::vector<VertexTag> tags;               ///< per dense vertex index
  std::vector<int> lower_link_components;    ///< per dense vertex index
  std::vector<Rational> critical_values;     ///< ascending
  std::vector<std::string> violations;

  std::size_t count(VertexTag tag) const;
};

/// Tags vertices by their lower-link component count. Ties in f are broken by
/// vertex index so that non-generic input still gets a well-defined answer.
CriticalReport classify_critical_vertices(const SurfaceComplex& s);

/// Empty iff no degenerate vertex and critical values are pairwise distinct and nonzero.
std::vector<std::string> check_simple_morse_odd(const SurfaceComplex& s);

/// Resolves value collisions (duplicates, zeros) by odd perturbations of size < eps
/// applied to involution orbits. Identity on already simple input. Throws
/// PreconditionError("link-degenerate vertex") when a vertex link is degenerate.
SurfaceComplex perturb_to_simple(const SurfaceComplex& s, const Rational& eps, std::uint64_t seed);

/// Index of the triangle with the same vertex set as `tri`, or -1.
class TriangleLookup {
 public:
  explicit TriangleLookup(const SurfaceComplex& s);
  int find(int a, int b, int c) const;

 private:
  std::unordered_map<std::uint64_t, int> map_;
  static std::uint64_t key(int a, int b, int c);
};

/// Position of vertex set {a,b,c} within the cyclic orders: +1 when (a,b,c) is a
/// rotation of `tri`, -1 when it is a rotation of the reverse.
int orientation_sign(const std::array<int, 3>& tri, int a, int b, int c);

}  // namespace reebinv
