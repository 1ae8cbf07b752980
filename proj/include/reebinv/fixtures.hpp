#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "reebinv/circulation.hpp"
#include "reebinv/mesh.hpp"

namespace reebinv {

/// Octahedron with the antipodal map and f = z: four vertices at 0.
SurfaceComplex octahedron_z();
/// Octahedron with f = x + 2y + 3z; values are +-1, +-2, +-3.
SurfaceComplex perturbed_octahedron();
/// Octahedron with every face cut into k^2 triangles, antipodal map, unit areas and
/// a generic linear height. Quotient is the projective plane.
SurfaceComplex sphere_fixture(int k = 3);
/// As sphere_fixture with a random odd polynomial of degree 1 or 3 and random even
/// areas. Throws PreconditionError if no simple Morse draw was found.
SurfaceComplex random_sphere(Rng& rng, int k, int degree);

/// n x m grid on the torus (n, m even) with the glide (phi, theta) -> (phi + pi, -theta),
/// vertex (i, j) at index i*m + j. Quotient is the Klein bottle.
struct TorusSpec {
  int n = 24;
  int m = 16;
  double phase = 0.137;  ///< phi offset in grid steps, keeps sin/cos values apart
  std::function<double(double, double)> height;  ///< must be odd under the glide
  bool geometric_areas = true;  ///< areas of the embedded torus of revolution; else random
  std::uint64_t seed = 1;
};
SurfaceComplex torus_grid(const TorusSpec& spec);

/// Standing torus; Reeb graph is a circle with one handle, iota swaps the parallel edges.
SurfaceComplex vertical_torus(int n = 24, int m = 16);
/// Nearly horizontal torus; both parallel edges are iota-invariant.
SurfaceComplex inclined_torus(int n = 24, int m = 16);
/// Random odd trigonometric height on an n x m grid with random even areas.
SurfaceComplex random_torus(Rng& rng, int n, int m);

/// Closed genus-3 polycube surface (7x3x1 slab, three holes) with the point
/// reflection through its centre. Triangle areas 1/2; f is linear and generic.
SurfaceComplex genus3_polycube();

/// Hexagonal bipyramid whose poles are monkey saddles (three lower-link runs).
SurfaceComplex monkey_saddle();

/// Random torus or sphere passing check_simple_morse_odd, at most `max_triangles`.
SurfaceComplex random_equivariant_mesh(Rng& rng, int max_triangles = 5000);

/// Closed even 1-form d(phi)/(2 pi) on a torus_grid mesh: not exact.
DiscreteOneForm torus_angle_form(const SurfaceComplex& s, const Connectivity& c, int n, int m);

/// Names accepted by named_fixture.
std::vector<std::string> fixture_names();
/// Throws InputError for an unknown name.
SurfaceComplex named_fixture(const std::string& name, std::uint64_t seed);

}  // namespace reebinv
