// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>

#include "checks.hpp"
#include "reebinv/circulation.hpp"
#include "reebinv/classify.hpp"
#include "reebinv/fixtures.hpp"
#include "reebinv/graph_topology.hpp"
#include "reebinv/random_graph.hpp"
#include "reebinv/realize.hpp"

using namespace reebinv;

namespace {

// Wall-clock limits, seconds.
constexpr double kFixtureLimit = 1.0;
constexpr double kDimensionLimit = 30.0;
constexpr double kOracleLimit = 120.0;
constexpr double kRealizeLimit = 120.0;
constexpr double kUnlimited = 1e9;

constexpr int kDimensionGraphs = 200;
constexpr int kOracleMeshes = 50;
constexpr int kOracleLevels = 100;
constexpr int kCosetFixtures = 20;
constexpr int kRealizeGraphs = 20;
constexpr int kRealizeRefinement = 4;

struct Outcome {
  bool ok = true;
  std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

bool all_zero(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

Outcome klein_dichotomy() {
  for (bool inclined : {false, true}) {
    const SurfaceComplex s = inclined ? inclined_torus() : vertical_torus();
    const auto g = build_measured_reeb(s);
    const int b1 = graph_first_betti(g), fix = count_fixed_points(g);
    const int d = orbit_moduli_dimension(g, topology_invariants(s).betti1_quotient);
    const int want_fix = inclined ? 2 : 0, want_d = inclined ? 1 : 0;
    if (b1 != 1 || fix != want_fix || d != want_d)
      return fail((inclined ? "inclined" : "vertical") + std::string(": b1=") + std::to_string(b1) +
                  " fix=" + std::to_string(fix) + " d=" + std::to_string(d));
    if (static_cast<int>(solve_circulation_space(g).basis.size()) != d) return fail("circulation basis size");
  }
  return {true, "vertical b1=1 fix=0 d=0; inclined fix=2 d=1"};
}

Outcome projective_plane() {
  const SurfaceComplex s = sphere_fixture();
  const auto g = build_measured_reeb(s);
  if (g.nodes.size() != 2 || g.edges.size() != 1) return fail("not a path graph");
  const int b1 = graph_first_betti(g), fix = count_fixed_points(g);
  const int d = orbit_moduli_dimension(g, topology_invariants(s).betti1_quotient);
  if (b1 != 0 || fix != 1 || d != 0) return fail("b1/fix/d wrong");
  const auto space = solve_circulation_space(g);
  if (!space.basis.empty()) return fail("circulation not unique");
  const CirculationGraph c{g, space.particular};
  if (!all_zero(kirchhoff_residuals(c)) || !all_zero(evenness_residuals(c))) return fail("solution violates constraints");
  return {true, "path graph, fix=1, unique circulation"};
}

Outcome dimension_identity() {
  Rng rng(2001);
  int max_b1 = 0;
  for (int k = 0; k < kDimensionGraphs; ++k) {
    const auto g = random_reeb_graph(rng);
    const auto h = involution_h1_action(g);
    max_b1 = std::max(max_b1, h.betti1);
    if (h.betti1 > 6) return fail("b1 above 6");
    if ((h.fix_count + h.betti1 - 1) % 2 != 0) return fail("parity violated on graph " + std::to_string(k));
    const int d = (h.fix_count + h.betti1 - 1) / 2;
    Rational trace = 0;
    for (std::size_t i = 0; i < h.action.rows(); ++i) trace += h.action(i, i);
    if (trace != 1 - h.fix_count || h.even_dim - h.odd_dim != 1 - h.fix_count) return fail("Hopf identity fails");
    const auto basis = solve_circulation_space(g).basis;
    if (h.odd_dim != d || static_cast<int>(basis.size()) != d)
      return fail("graph " + std::to_string(k) + ": basis " + std::to_string(basis.size()) + ", odd " +
                  std::to_string(h.odd_dim) + ", formula " + std::to_string(d));
  }
  return {true, std::to_string(kDimensionGraphs) + " graphs, b1 up to " + std::to_string(max_b1)};
}

const std::vector<SurfaceComplex>& random_meshes() {
  static const std::vector<SurfaceComplex> meshes = [] {
    Rng rng(2002);
    std::vector<SurfaceComplex> out;
    for (int k = 0; k < kOracleMeshes; ++k) out.push_back(random_equivariant_mesh(rng, 5000));
    return out;
  }();
  return meshes;
}

Outcome oracle_equivalence() {
  Rng rng(2003);
  std::size_t largest = 0;
  for (std::size_t k = 0; k < random_meshes().size(); ++k) {
    const auto& s = random_meshes()[k];
    largest = std::max(largest, s.triangle_count());
    if (s.triangle_count() > 5000) return fail("mesh above 5000 triangles");
    const auto why = checks::oracle_mismatch(s, build_measured_reeb(s), checks::sample_levels(s, rng, kOracleLevels));
    if (!why.empty()) return fail("mesh " + std::to_string(k) + ": " + why);
  }
  return {true, std::to_string(random_meshes().size()) + " meshes x " + std::to_string(kOracleLevels) +
                    " levels, up to " + std::to_string(largest) + " triangles"};
}

Outcome conservation() {
  for (std::size_t k = 0; k < random_meshes().size(); ++k) {
    const auto& s = random_meshes()[k];
    const auto g = build_measured_reeb(s);
    Rational mass = 0;
    for (std::size_t e = 0; e < g.edges.size(); ++e) mass += g.mass(static_cast<int>(e));
    if (mass != std::accumulate(s.areas.begin(), s.areas.end(), Rational(0))) return fail("mass lost on mesh " + std::to_string(k));
    if (2 * graph_first_betti(g) != topology_invariants(s).betti1_cover) return fail("2 b1(graph) != b1(mesh)");
    if (casimir_moments(g, {1}).global[0] != 0) return fail("global first moment nonzero");
    if (!compatibility_check(g, s).empty()) return fail("compatibility check failed");
  }
  return {true, std::to_string(random_meshes().size()) + " meshes exact"};
}

Outcome coset_invariance() {
  Rng rng(2004);
  for (int k = 0; k < kCosetFixtures; ++k) {
    const SurfaceComplex s = random_equivariant_mesh(rng, 1500);
    const Connectivity c = build_connectivity(s);
    const auto g = build_measured_reeb(s);
    const auto alpha = solve_primitive(s, triangle_means(s));
    std::vector<Rational> h(s.vertex_count());
    for (std::size_t v = 0; v < h.size(); ++v)
      if (static_cast<int>(v) < s.involution[v]) h[v] = h[s.involution[v]] = rng.uniform_rational(-4, 4, 16);
    const auto beta = alpha + exact_form(s, c, h);
    for (const auto& t : checks::sample_levels(s, rng, 5)) {
      const auto comps = level_components(s, t);
      for (std::size_t i = 0; i < comps.size(); ++i)
        if (level_cycle_circulation(s, alpha, t, static_cast<int>(i)) !=
            level_cycle_circulation(s, beta, t, static_cast<int>(i)))
          return fail("level circulation changed on fixture " + std::to_string(k));
    }
    const auto a = coset_to_circulation_graph(s, alpha, g), b = coset_to_circulation_graph(s, beta, g);
    if (a.graph.cref != b.graph.cref || a.stokes_defect != b.stokes_defect)
      return fail("circulation graph changed on fixture " + std::to_string(k));
  }
  return {true, std::to_string(kCosetFixtures) + " fixtures"};
}

Outcome orbit_separation() {
  const auto inclined = build_measured_reeb(inclined_torus());
  const auto space = solve_circulation_space(inclined);
  if (space.basis.size() != 1) return fail("inclined basis size");
  const CirculationGraph a{inclined, space.particular};
  CirculationGraph b = a;
  for (std::size_t e = 0; e < b.cref.size(); ++e) b.cref[e] += space.basis[0][e];
  if (iso_circulation_graph(a, b)) return fail("inclined: shifted circulation reported isomorphic");

  // vertical: solve independently on a relabelled copy; the result must match
  const auto vertical = build_measured_reeb(vertical_torus());
  Rng rng(2005);
  const auto copy = relabeled(vertical, rng);
  const auto sv = solve_circulation_space(vertical), sc = solve_circulation_space(copy);
  if (!sv.basis.empty() || !sc.basis.empty()) return fail("vertical circulation not unique");
  if (!iso_circulation_graph(CirculationGraph{vertical, sv.particular}, CirculationGraph{copy, sc.particular}))
    return fail("vertical: valid circulations not isomorphic");
  return {true, "inclined separated, vertical identified"};
}

Outcome realization_round_trip() {
  Rng rng(2006);
  RandomGraphOptions opts;
  opts.max_betti = 4;
  opts.max_lower_nodes = 6;
  for (int k = 0; k < kRealizeGraphs; ++k) {
    const auto g = random_reeb_graph(rng, opts);
    const auto h = build_measured_reeb(realize_graph(g, kRealizeRefinement));
    const Rational tol = g.total_mass() / (1 << kRealizeRefinement);
    const auto m = iso_measured_reeb(h, g, tol);
    if (!m) return fail("graph " + std::to_string(k) + " not recovered");
    for (std::size_t n = 0; n < h.nodes.size(); ++n)
      if (h.nodes[n].f != g.nodes[m->nodes[n]].f) return fail("node value moved");
    for (std::size_t e = 0; e < h.edges.size(); ++e)
      if (h.mass(static_cast<int>(e)) != g.mass(m->edges[e])) return fail("edge mass moved");
  }
  return {true, std::to_string(kRealizeGraphs) + " graphs at r=" + std::to_string(kRealizeRefinement)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double limit;
  };
  const std::vector<Criterion> criteria = {
      {"klein-dichotomy", klein_dichotomy, 2 * kFixtureLimit},  // two fixtures, 1 s each
      {"projective-plane", projective_plane, kFixtureLimit},
      {"dimension-identity", dimension_identity, kDimensionLimit},
      {"oracle-equivalence", oracle_equivalence, kOracleLimit},
      {"conservation-compatibility", conservation, kUnlimited},
      {"coset-invariance", coset_invariance, kUnlimited},
      {"orbit-separation", orbit_separation, kFixtureLimit},
      {"realization-round-trip", realization_round_trip, kRealizeLimit},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (out.ok && secs > c.limit) out = fail("took longer than " + std::to_string(c.limit) + " s");
    failures += out.ok ? 0 : 1;
    std::cout << (out.ok ? "PASS " : "FAIL ") << c.name << " (" << std::fixed << std::setprecision(2) << secs
              << " s) " << out.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
