#include <catch_amalgamated.hpp>

#include "checks.hpp"
#include "reebinv/circulation.hpp"
#include "reebinv/fixtures.hpp"
#include "reebinv/graph_topology.hpp"
#include "reebinv/random_graph.hpp"

using namespace reebinv;

namespace {

bool all_zero(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

DiscreteOneForm random_form(const Connectivity& c, Rng& rng) {
  DiscreteOneForm a = DiscreteOneForm::zero(c);
  for (auto& v : a.values) v = rng.uniform_rational(-2, 2, 10);
  return a;
}

std::vector<Rational> random_vertex_function(const SurfaceComplex& s, Rng& rng) {
  std::vector<Rational> h(s.vertex_count());
  for (auto& v : h) v = rng.uniform_rational(-3, 3, 12);
  return h;
}

std::array<Rational, 3> tri_values(const SurfaceComplex& s, int t) {
  const auto& tri = s.triangles[t];
  return {s.f[tri[0]], s.f[tri[1]], s.f[tri[2]]};
}

// Index of the level-t component lying on graph edge e.
int component_on(const SurfaceComplex& s, const MeasuredReebGraph& g, int e, const Rational& t) {
  const auto comps = level_components(s, t);
  for (std::size_t i = 0; i < comps.size(); ++i)
    if (g.cellmap->edge_at(comps[i].triangles.front(), t) == e) return static_cast<int>(i);
  return -1;
}

// Sum of curl * area over the part of edge e between levels x and y, slab by slab.
Rational band_integral(const SurfaceComplex& s, const MeasuredReebGraph& g, const std::vector<Rational>& curl, int e,
                       const Rational& x, const Rational& y) {
  const CellMap& cm = *g.cellmap;
  Rational sum = 0;
  for (std::size_t t = 0; t < s.triangle_count(); ++t) {
    const auto v = tri_values(s, static_cast<int>(t));
    for (std::size_t j = 0; j < cm.slab_edges[t].size(); ++j) {
      if (cm.slab_edges[t][j] != e) continue;
      const int k = cm.first_band[t] + static_cast<int>(j);
      const Rational lo = std::max(x, cm.levels[k]), hi = std::min(y, cm.levels[k + 1]);
      if (lo >= hi) continue;
      sum += curl[t] * (triangle_sublevel_area(v, s.areas[t], hi) - triangle_sublevel_area(v, s.areas[t], lo));
    }
  }
  return sum;
}

}  // namespace

TEST_CASE("edge flux in closed form", "[circulation]") {
  CHECK(edge_flux(EdgeMeasureProfile::uniform(-1, 1, 4)) == 0);
  CHECK(edge_flux(EdgeMeasureProfile::uniform(0, 2, 4)) == 4);
  Rng rng(41);
  for (int k = 0; k < 30; ++k) {
    const auto g = random_reeb_graph(rng);
    Rational total = 0;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      const Rational f = edge_flux(g.edges[e].profile);
      total += f;
      CHECK(edge_flux(g.edges[g.edge_involution[e]].profile) == -f);
      if (g.edge_involution[e] == static_cast<int>(e)) CHECK(f == 0);
    }
    CHECK(total == 0);
  }
}

TEST_CASE("projective plane: unique circulation s^2 - 1", "[circulation]") {
  const auto g = path_graph();
  const auto space = solve_circulation_space(g);
  CHECK(space.basis.empty());
  CirculationGraph c{g, space.particular};
  CHECK(c.cref[0] == 0);
  for (int k = -4; k <= 4; ++k) {
    const Rational s = ratio(k, 4);
    CHECK(c.value(0, s) == s * s - 1);
  }
  CHECK(c.head_limit(0) == 0);
}

TEST_CASE("Klein bottle graphs: circulation dimensions", "[circulation]") {
  CHECK(solve_circulation_space(klein_graph(true)).basis.empty());
  const auto fixed = solve_circulation_space(klein_graph(false));
  REQUIRE(fixed.basis.size() == 1);
  const auto& b = fixed.basis[0];
  CHECK(b[0] == 0);
  CHECK(b[3] == 0);
  CHECK(b[1] == -b[2]);
  CHECK(b[1] != 0);
}

TEST_CASE("solver output satisfies every constraint exactly", "[circulation]") {
  Rng rng(42);
  for (int k = 0; k < 80; ++k) {
    const auto g = random_reeb_graph(rng);
    const auto space = solve_circulation_space(g);
    CHECK(static_cast<int>(space.basis.size()) == orbit_moduli_dimension(g, graph_first_betti(g)));
    CirculationGraph c{g, space.particular};
    CHECK(all_zero(kirchhoff_residuals(c)));
    CHECK(all_zero(evenness_residuals(c)));
    for (const auto& h : space.basis) {
      CirculationGraph shifted = c;
      for (std::size_t e = 0; e < h.size(); ++e) shifted.cref[e] += 3 * h[e];
      CHECK(all_zero(kirchhoff_residuals(shifted)));
      CHECK(all_zero(evenness_residuals(shifted)));
    }
    // dC/dm = t: over [t, t+h] the ratio of increments is an average of the level
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      const auto& p = g.edges[e].profile;
      for (std::size_t i = 0; i <= p.breaks.size(); ++i) {
        const Rational t = p.piece_start(i), h = (p.piece_end(i) - t) / 64;
        const Rational ratio_at = (c.value(static_cast<int>(e), t + h) - c.value(static_cast<int>(e), t)) / (p(t + h) - p(t));
        CHECK(t <= ratio_at);
        CHECK(ratio_at <= t + h);
      }
    }
  }
}

TEST_CASE("discrete curl", "[circulation]") {
  Rng rng(43);
  const SurfaceComplex s = vertical_torus();
  const Connectivity c = build_connectivity(s);
  CHECK(all_zero(discrete_curl(s, exact_form(s, c, random_vertex_function(s, rng)))));
  // an even random form has odd curl
  DiscreteOneForm a = random_form(c, rng);
  for (std::size_t e = 0; e < c.edges.size(); ++e) {
    const auto [u, v] = c.edges[e];
    const int iu = s.involution[u], iv = s.involution[v];
    if (c.edge_index(iu, iv) > static_cast<int>(e)) a.set_oriented(c, iu, iv, a.values[e]);
  }
  REQUIRE(is_even(s, c, a));
  const auto curl = discrete_curl(s, a);
  TriangleLookup lookup(s);
  for (std::size_t t = 0; t < s.triangle_count(); ++t) {
    const auto& tri = s.triangles[t];
    CHECK(curl[lookup.find(s.involution[tri[0]], s.involution[tri[1]], s.involution[tri[2]])] == -curl[t]);
  }
  const auto means = triangle_means(s);
  const auto alpha = solve_primitive(s, means);
  CHECK(discrete_curl(s, alpha) == means);
  CHECK(is_even(s, c, alpha));
  CHECK(is_even(s, c, torus_angle_form(s, c, 24, 16)));
  CHECK(all_zero(discrete_curl(s, torus_angle_form(s, c, 24, 16))));
}

TEST_CASE("level circulation: exact forms and discrete Stokes", "[circulation]") {
  Rng rng(44);
  for (int k = 0; k < 6; ++k) {
    const SurfaceComplex s = random_equivariant_mesh(rng, 1500);
    const Connectivity c = build_connectivity(s);
    const auto g = build_measured_reeb(s);
    const auto dh = exact_form(s, c, random_vertex_function(s, rng));
    const auto a = random_form(c, rng);
    const auto curl = discrete_curl(s, a);
    for (const auto& t : checks::sample_levels(s, rng, 5)) {
      const auto comps = level_components(s, t);
      for (std::size_t i = 0; i < comps.size(); ++i) {
        CHECK(level_cycle_circulation(s, dh, t, static_cast<int>(i)) == 0);
        CHECK(level_cycle_circulation(s, a + dh, t, static_cast<int>(i)) ==
              level_cycle_circulation(s, a, t, static_cast<int>(i)));
      }
    }
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      const int ie = static_cast<int>(e);
      const Rational x = g.f_lo(ie) + (g.f_hi(ie) - g.f_lo(ie)) / 3, y = g.f_lo(ie) + 2 * (g.f_hi(ie) - g.f_lo(ie)) / 3;
      bool regular = true;
      for (const auto& v : s.f) regular = regular && v != x && v != y;
      if (!regular) continue;
      const int cx = component_on(s, g, ie, x), cy = component_on(s, g, ie, y);
      REQUIRE(cx >= 0);
      REQUIRE(cy >= 0);
      CHECK(level_cycle_circulation(s, a, y, cy) - level_cycle_circulation(s, a, x, cx) ==
            band_integral(s, g, curl, ie, x, y));
    }
  }
  CHECK_THROWS_AS(level_cycle_circulation(perturbed_octahedron(), DiscreteOneForm{std::vector<Rational>(12)}, 1, 0),
                  PreconditionError);
}

TEST_CASE("coset circulation graph", "[circulation]") {
  Rng rng(45);
  for (int k = 0; k < 5; ++k) {
    const SurfaceComplex s = random_equivariant_mesh(rng, 1200);
    const Connectivity c = build_connectivity(s);
    const auto g = build_measured_reeb(s);
    const auto alpha = solve_primitive(s, triangle_means(s));
    const auto out = coset_to_circulation_graph(s, alpha, g);
    // the discrete circulation obeys Kirchhoff and evenness once its own head limits are used
    std::vector<Rational> head(g.edges.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e)
      head[e] = out.graph.head_limit(static_cast<int>(e)) + out.stokes_defect[e];
    for (std::size_t n = 0; n < g.nodes.size(); ++n) {
      Rational r = 0;
      for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (g.edges[e].head == static_cast<int>(n)) r += head[e];
        if (g.edges[e].tail == static_cast<int>(n)) r -= out.graph.cref[e];
      }
      CHECK(r == 0);
    }
    for (std::size_t e = 0; e < g.edges.size(); ++e) CHECK(out.graph.cref[e] == head[g.edge_involution[e]]);
    const auto shifted = coset_to_circulation_graph(s, alpha + exact_form(s, c, random_vertex_function(s, rng)), g);
    CHECK(shifted.graph.cref == out.graph.cref);
  }
  const SurfaceComplex s = perturbed_octahedron();
  CHECK_THROWS_AS(coset_to_circulation_graph(s, DiscreteOneForm::zero(build_connectivity(s)), build_measured_reeb(s)),
                  PreconditionError);
}

TEST_CASE("closed non-exact shift moves cref by a homogeneous solution", "[circulation]") {
  for (bool inclined : {false, true}) {
    const SurfaceComplex s = inclined ? inclined_torus() : vertical_torus();
    const Connectivity c = build_connectivity(s);
    const auto g = build_measured_reeb(s);
    const auto alpha = solve_primitive(s, triangle_means(s));
    const auto base = coset_to_circulation_graph(s, alpha, g).graph.cref;
    const auto moved = coset_to_circulation_graph(s, alpha + torus_angle_form(s, c, 24, 16), g).graph.cref;
    std::vector<Rational> delta(base.size());
    for (std::size_t e = 0; e < base.size(); ++e) delta[e] = moved[e] - base[e];
    if (!inclined) {
      // the parallel edges are swapped: the shift must vanish
      CHECK(all_zero(delta));
      continue;
    }
    const auto basis = solve_circulation_space(g).basis;
    REQUIRE(basis.size() == 1);
    CHECK_FALSE(all_zero(delta));
    // delta is a multiple of the basis vector
    std::size_t pivot = 0;
    while (basis[0][pivot] == 0) ++pivot;
    const Rational k = delta[pivot] / basis[0][pivot];
    for (std::size_t e = 0; e < delta.size(); ++e) CHECK(delta[e] == k * basis[0][e]);
  }
}
