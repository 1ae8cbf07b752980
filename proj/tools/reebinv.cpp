#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "reebinv/circulation.hpp"
#include "reebinv/classify.hpp"
#include "reebinv/fixtures.hpp"
#include "reebinv/graph_topology.hpp"
#include "reebinv/io.hpp"
#include "reebinv/realize.hpp"

using namespace reebinv;

namespace {

// Reported with exit code 1: the input parsed but fails a check.
class CheckFailure : public std::runtime_error {
 public:
  CheckFailure(const std::string& what, Json detail) : std::runtime_error(what), detail(std::move(detail)) {}
  Json detail;
};

SurfaceComplex load_mesh(const std::string& path) { return mesh_from_json(parse_json(read_text(path))); }
MeasuredReebGraph load_graph(const std::string& path) { return graph_from_json(parse_json(read_text(path))); }

Json violations_json(const ValidationReport& report) {
  Json out = Json::array();
  for (const auto& v : report.violations)
    out.push_back({{"kind", to_string(v.kind)}, {"message", v.message}, {"ids", v.ids}});
  return out;
}

SurfaceComplex load_valid_mesh(const std::string& path) {
  SurfaceComplex s = load_mesh(path);
  const auto report = validate_surface(s);
  if (!report.ok()) throw CheckFailure("invalid mesh", violations_json(report));
  return s;
}

MeasuredReebGraph load_valid_graph(const std::string& path) {
  MeasuredReebGraph g = load_graph(path);
  const auto problems = validate_graph(g);
  if (!problems.empty()) throw CheckFailure("invalid graph", problems);
  return g;
}

std::vector<int> parse_orders(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw InputError("bad moment order \"" + item + "\"");
    }
  }
  return out;
}

int moduli_dimension(const MeasuredReebGraph& g) { return orbit_moduli_dimension(g, graph_first_betti(g)); }

Json classification_entry(const MeasuredReebGraph& g, const std::vector<int>& orders) {
  return {{"invariants", invariant_to_json(invariant_vector(g))},
          {"orbit_dimension", moduli_dimension(g)},
          {"casimirs", casimir_to_json(casimir_moments(g, orders))}};
}

void fail(const std::string& kind, const std::string& message, const Json& detail = nullptr) {
  Json err{{"error", kind}, {"message", message}};
  if (!detail.is_null()) err["detail"] = detail;
  std::cerr << err.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reeb graphs with involution for odd functions on orientation double covers"};
  app.require_subcommand(1);

  std::string in1 = "-", in2 = "-", out = "-";
  std::string tol_text, eps_text = "1/1000", orders_text = "0,2,4", fixture;
  std::uint64_t seed = 1;
  int refine = 4;
  bool basis = false, circulation = false, list = false;

  auto* validate = app.add_subcommand("validate", "Check a mesh and report its topology and critical points");
  validate->add_option("mesh", in1, "mesh JSON, - for stdin");

  auto* reeb = app.add_subcommand("reeb", "Measured Reeb graph with involution of a mesh");
  reeb->add_option("mesh", in1, "mesh JSON, - for stdin");
  reeb->add_option("-o,--output", out, "graph JSON, - for stdout");

  auto* orbit = app.add_subcommand("orbit-dim", "Dimension of the orbit family over a graph");
  orbit->add_option("graph", in1, "graph JSON, - for stdin");

  auto* circ = app.add_subcommand("circulation", "Even circulation function solving the Kirchhoff rules");
  circ->add_option("graph", in1, "graph JSON, - for stdin");
  circ->add_flag("--basis", basis, "also emit the homogeneous solutions");
  circ->add_option("-o,--output", out, "circulation graph JSON");

  auto* classify = app.add_subcommand("classify", "Isomorphism test between two graphs");
  classify->add_option("first", in1, "graph JSON")->required();
  classify->add_option("second", in2, "graph JSON")->required();
  classify->add_flag("--circulation", circulation, "inputs are circulation graphs");
  classify->add_option("--tol", tol_text, "profile tolerance as p/q");
  classify->add_option("--k", orders_text, "Casimir moment orders");

  auto* casimirs = app.add_subcommand("casimirs", "Moments of the edge measures");
  casimirs->add_option("graph", in1, "graph JSON, - for stdin");
  casimirs->add_option("--k", orders_text, "comma separated orders");

  auto* compat = app.add_subcommand("compat", "Check that a graph fits a mesh");
  compat->add_option("graph", in1, "graph JSON")->required();
  compat->add_option("mesh", in2, "mesh JSON")->required();

  auto* perturb = app.add_subcommand("perturb", "Odd perturbation to a simple Morse function");
  perturb->add_option("mesh", in1, "mesh JSON, - for stdin");
  perturb->add_option("--eps", eps_text, "perturbation bound p/q");
  perturb->add_option("--seed", seed, "random seed");
  perturb->add_option("-o,--output", out, "mesh JSON");

  auto* realize = app.add_subcommand("realize", "Equivariant mesh with a given measured Reeb graph");
  realize->add_option("graph", in1, "graph JSON, - for stdin");
  realize->add_option("--refine", refine, "profile accuracy: total mass / 2^refine")->check(CLI::Range(0, 12));
  realize->add_option("-o,--output", out, "mesh JSON");

  auto* fixtures = app.add_subcommand("fixtures", "Emit a built-in mesh");
  fixtures->add_option("name", fixture, "fixture name");
  fixtures->add_option("--seed", seed, "random seed for randomized fixtures");
  fixtures->add_flag("--list", list, "list the fixture names");
  fixtures->add_option("-o,--output", out, "mesh JSON");

  auto* dot = app.add_subcommand("export-dot", "Graphviz rendering of a graph");
  dot->add_option("graph", in1, "graph JSON, - for stdin");
  dot->add_option("-o,--output", out, "DOT file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    fail("usage", e.what());
    return 2;
  }

  try {
    if (*validate) {
      const SurfaceComplex s = load_mesh(in1);
      const auto report = validate_surface(s);
      Json j{{"valid", report.ok()}, {"violations", violations_json(report)}};
      if (report.ok()) {
        const auto t = topology_invariants(s);
        j["topology"] = {{"euler_cover", t.euler_cover}, {"betti1_cover", t.betti1_cover},
                         {"euler_quotient", t.euler_quotient}, {"betti1_quotient", t.betti1_quotient}};
        const auto cr = classify_critical_vertices(s);
        Json values = Json::array();
        for (const auto& v : cr.critical_values) values.push_back(rational_to_json(v));
        j["critical"] = {{"minima", cr.count(VertexTag::Minimum)}, {"maxima", cr.count(VertexTag::Maximum)},
                         {"saddles", cr.count(VertexTag::Saddle)}, {"degenerate", cr.count(VertexTag::Degenerate)},
                         {"values", std::move(values)}, {"simple_morse", check_simple_morse_odd(s)}};
      }
      write_text("-", dump_json(j));
      return report.ok() ? 0 : 1;
    }
    if (*reeb) {
      const SurfaceComplex s = load_valid_mesh(in1);
      const auto problems = check_simple_morse_odd(s);
      if (!problems.empty()) throw CheckFailure("not a simple Morse odd function", problems);
      write_text(out, dump_json(graph_to_json(build_measured_reeb(s))));
      return 0;
    }
    if (*orbit) {
      write_text("-", "d = " + std::to_string(moduli_dimension(load_valid_graph(in1))) + "\n");
      return 0;
    }
    if (*circ) {
      CirculationGraph c;
      c.base = load_valid_graph(in1);
      const CirculationSpace space = solve_circulation_space(c.base);
      c.cref = space.particular;
      Json j = circulation_to_json(c);
      if (basis) {
        Json rows = Json::array();
        for (const auto& b : space.basis) {
          Json row = Json::object();
          for (std::size_t e = 0; e < b.size(); ++e) row[std::to_string(c.base.edges[e].id)] = rational_to_json(b[e]);
          rows.push_back(std::move(row));
        }
        j["basis"] = std::move(rows);
      }
      write_text(out, dump_json(j));
      return 0;
    }
    if (*classify) {
      std::optional<Rational> tol;
      if (!tol_text.empty()) tol = parse_rational(tol_text);
      const auto orders = parse_orders(orders_text);
      Json j;
      if (circulation) {
        const CirculationGraph c1 = circulation_from_json(parse_json(read_text(in1)));
        const CirculationGraph c2 = circulation_from_json(parse_json(read_text(in2)));
        for (const auto* c : {&c1, &c2}) {
          const auto problems = validate_graph(c->base);
          if (!problems.empty()) throw CheckFailure("invalid graph", problems);
        }
        const auto m = iso_circulation_graph(c1, c2, tol);
        j["isomorphic"] = m.has_value();
        j["mapping"] = m ? mapping_to_json(c1.base, c2.base, *m) : Json(nullptr);
        j["graphs"] = {classification_entry(c1.base, orders), classification_entry(c2.base, orders)};
      } else {
        const MeasuredReebGraph g1 = load_valid_graph(in1), g2 = load_valid_graph(in2);
        const auto m = iso_measured_reeb(g1, g2, tol);
        j["isomorphic"] = m.has_value();
        j["mapping"] = m ? mapping_to_json(g1, g2, *m) : Json(nullptr);
        j["graphs"] = {classification_entry(g1, orders), classification_entry(g2, orders)};
      }
      write_text("-", dump_json(j));
      return 0;
    }
    if (*casimirs) {
      const auto g = load_valid_graph(in1);
      write_text("-", dump_json(casimir_to_json(casimir_moments(g, parse_orders(orders_text)))));
      return 0;
    }
    if (*compat) {
      const auto g = load_valid_graph(in1);
      const auto s = load_valid_mesh(in2);
      const auto problems = compatibility_check(g, s);
      write_text("-", dump_json(Json{{"compatible", problems.empty()}, {"violations", problems}}));
      return problems.empty() ? 0 : 1;
    }
    if (*perturb) {
      const SurfaceComplex s = load_valid_mesh(in1);
      write_text(out, dump_json(mesh_to_json(perturb_to_simple(s, parse_rational(eps_text), seed))));
      return 0;
    }
    if (*realize) {
      write_text(out, dump_json(mesh_to_json(realize_graph(load_valid_graph(in1), refine))));
      return 0;
    }
    if (*fixtures) {
      if (list) {
        for (const auto& name : fixture_names()) write_text("-", name + "\n");
        return 0;
      }
      if (fixture.empty()) throw InputError("fixture name required");
      write_text(out, dump_json(mesh_to_json(named_fixture(fixture, seed))));
      return 0;
    }
    if (*dot) {
      write_text(out, graph_to_dot(load_valid_graph(in1)));
      return 0;
    }
  } catch (const InputError& e) {
    fail("input", e.what());
    return 2;
  } catch (const CheckFailure& e) {
    fail("validation", e.what(), e.detail);
    return 1;
  } catch (const PreconditionError& e) {
    fail("precondition", e.what());
    return 1;
  }
  return 0;
}
