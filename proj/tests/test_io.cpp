#include <catch_amalgamated.hpp>

#include "reebinv/circulation.hpp"
#include "reebinv/classify.hpp"
#include "reebinv/fixtures.hpp"
#include "reebinv/io.hpp"
#include "reebinv/random_graph.hpp"

using namespace reebinv;

namespace {

Json round_trip(const Json& j) { return parse_json(dump_json(j)); }

}  // namespace

TEST_CASE("mesh files round trip", "[io]") {
  Rng rng(71);
  for (const auto& s : {inclined_torus(), genus3_polycube(), random_equivariant_mesh(rng, 400)}) {
    const auto back = mesh_from_json(round_trip(mesh_to_json(s)));
    CHECK(back.ids == s.ids);
    CHECK(back.f == s.f);
    CHECK(back.triangles == s.triangles);
    CHECK(back.areas == s.areas);
    CHECK(back.involution == s.involution);
  }
}

TEST_CASE("graph and circulation files round trip", "[io]") {
  Rng rng(72);
  for (int k = 0; k < 20; ++k) {
    const auto g = random_reeb_graph(rng);
    const auto back = graph_from_json(round_trip(graph_to_json(g)));
    CHECK(validate_graph(back).empty());
    const auto m = iso_measured_reeb(g, back);
    REQUIRE(m.has_value());
    for (std::size_t e = 0; e < g.edges.size(); ++e) CHECK(back.edges[e].id == g.edges[e].id);
    const CirculationGraph c{g, solve_circulation_space(g).particular};
    const auto cb = circulation_from_json(round_trip(circulation_to_json(c)));
    CHECK(cb.cref == c.cref);
  }
}

TEST_CASE("graph file shorthand", "[io]") {
  const auto g = graph_from_json(parse_json(R"({
    "nodes": [{"id": 7, "f": -1}, {"id": 9, "f": 1}],
    "edges": [{"id": 3, "tail": 7, "head": 9, "mass": "4"}],
    "iota": {"nodes": [[7, 9], [9, 7]], "edges": [[3, 3]]}
  })"));
  REQUIRE(g.measured);
  CHECK(g.mass(0) == 4);
  CHECK(g.edges[0].profile(0) == 2);
  CHECK(iso_measured_reeb(g, path_graph()).has_value());
  const auto bare = graph_from_json(parse_json(R"({"nodes": [{"id": 1, "f": "-1/2"}, {"id": 2, "f": "1/2"}],
    "edges": [{"id": 1, "tail": 1, "head": 2}]})"));
  CHECK_FALSE(bare.measured);
  CHECK_FALSE(bare.has_involution());
}

TEST_CASE("one-forms are read by vertex ids and orientation", "[io]") {
  const SurfaceComplex s = vertical_torus();
  const Connectivity c = build_connectivity(s);
  Rng rng(73);
  DiscreteOneForm a = DiscreteOneForm::zero(c);
  for (auto& v : a.values) v = rng.uniform_rational(-1, 1, 8);
  const auto back = one_form_from_json(s, c, round_trip(one_form_to_json(s, c, a)));
  CHECK(back.values == a.values);
  const auto [u, v] = c.edges[0];
  Json j{{"edges", Json::array({Json::array({s.ids[v], s.ids[u], "3/2"})})}};
  CHECK(one_form_from_json(s, c, j).values[0] == ratio(-3, 2));
  j["edges"].push_back(Json::array({s.ids[u], s.ids[v], 1}));
  CHECK_THROWS_AS(one_form_from_json(s, c, j), InputError);
}

TEST_CASE("malformed input is an input error", "[io]") {
  CHECK_THROWS_AS(parse_json("{\"nodes\": ["), InputError);
  CHECK_THROWS_AS(rational_from_json(Json("1/0")), InputError);
  CHECK_THROWS_AS(rational_from_json(Json(0.5)), InputError);
  CHECK_THROWS_AS(mesh_from_json(parse_json(R"({"vertices": [{"id": 1, "f": 0}], "triangles": [[1, 1]],
    "areas": [1], "involution": []})")),
                  InputError);
  CHECK_THROWS_AS(mesh_from_json(parse_json(R"({"vertices": [{"id": 1, "f": 0}, {"id": 1, "f": 1}],
    "triangles": [], "areas": [], "involution": []})")),
                  InputError);
  CHECK_THROWS_AS(graph_from_json(parse_json(R"({"nodes": [{"id": 1, "f": 0}],
    "edges": [{"id": 1, "tail": 1, "head": 5}]})")),
                  InputError);
  CHECK_THROWS_AS(graph_from_json(parse_json(R"({"nodes": [{"id": 1, "f": -1}, {"id": 2, "f": 1}],
    "edges": [{"id": 1, "tail": 1, "head": 2, "mass": 3,
               "profile": {"breaks": [], "pieces": [[0, 1, 1]]}}]})")),
                  InputError);
  CHECK_THROWS_AS(read_text("/nonexistent/file.json"), InputError);
}

TEST_CASE("dot export", "[io]") {
  const auto dot = graph_to_dot(klein_graph(false));
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(dot.find("rankdir=BT") != std::string::npos);
  CHECK(dot.find("color=red") != std::string::npos);
  CHECK(graph_to_dot(klein_graph(true)).find("color=red") == std::string::npos);
}
