#include "reebinv/io.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

namespace reebinv {

std::string read_text(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(mpz_class(std::to_string(j.get<long long>())));
  throw InputError("expected a rational string, got " + j.dump());
}

Json rational_to_json(const Rational& r) { return format_rational(r); }

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw InputError(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

const Json& array_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_array()) throw InputError(std::string("field \"") + key + "\" must be an array");
  return v;
}

int as_int(const Json& v) {
  if (!v.is_number_integer()) throw InputError("expected an integer id, got " + v.dump());
  return v.get<int>();
}

std::pair<int, int> id_pair(const Json& v) {
  if (!v.is_array() || v.size() != 2) throw InputError("expected an id pair, got " + v.dump());
  return {as_int(v[0]), as_int(v[1])};
}

class IdMap {
 public:
  void add(int id, int index, const char* what) {
    if (!map_.emplace(id, index).second) throw InputError(std::string("duplicate ") + what + " id " + std::to_string(id));
  }
  int at(int id, const char* what) const {
    auto it = map_.find(id);
    if (it == map_.end()) throw InputError(std::string("unknown ") + what + " id " + std::to_string(id));
    return it->second;
  }

 private:
  std::map<int, int> map_;
};

// Fills both directions of each listed pair; a conflicting entry is an error.
void read_involution(const Json& pairs, const IdMap& ids, const char* what, std::vector<int>& out) {
  std::vector<bool> explicit_entry(out.size(), false);
  for (const auto& p : pairs) {
    auto [a, b] = id_pair(p);
    const int ia = ids.at(a, what), ib = ids.at(b, what);
    if (explicit_entry[ia] && out[ia] != ib)
      throw InputError(std::string("conflicting involution entries for ") + what + " " + std::to_string(a));
    out[ia] = ib;
    explicit_entry[ia] = true;
    if (!explicit_entry[ib]) out[ib] = ia;
  }
}

}  // namespace

SurfaceComplex mesh_from_json(const Json& j) {
  SurfaceComplex s;
  IdMap ids;
  for (const auto& v : array_field(j, "vertices")) {
    const int id = int_field(v, "id");
    ids.add(id, static_cast<int>(s.ids.size()), "vertex");
    s.ids.push_back(id);
    s.f.push_back(rational_from_json(field(v, "f")));
  }
  for (const auto& t : array_field(j, "triangles")) {
    if (!t.is_array() || t.size() != 3) throw InputError("triangle must list three vertex ids: " + t.dump());
    s.triangles.push_back({ids.at(as_int(t[0]), "vertex"), ids.at(as_int(t[1]), "vertex"), ids.at(as_int(t[2]), "vertex")});
  }
  for (const auto& a : array_field(j, "areas")) s.areas.push_back(rational_from_json(a));
  s.involution.assign(s.ids.size(), -1);
  if (j.contains("involution")) read_involution(array_field(j, "involution"), ids, "vertex", s.involution);
  return s;
}

Json mesh_to_json(const SurfaceComplex& s) {
  Json j;
  Json vertices = Json::array();
  for (std::size_t i = 0; i < s.ids.size(); ++i) vertices.push_back({{"id", s.ids[i]}, {"f", rational_to_json(s.f[i])}});
  j["vertices"] = std::move(vertices);
  Json triangles = Json::array();
  for (const auto& t : s.triangles) triangles.push_back({s.ids[t[0]], s.ids[t[1]], s.ids[t[2]]});
  j["triangles"] = std::move(triangles);
  Json areas = Json::array();
  for (const auto& a : s.areas) areas.push_back(rational_to_json(a));
  j["areas"] = std::move(areas);
  Json inv = Json::array();
  for (std::size_t i = 0; i < s.involution.size(); ++i)
    if (s.involution[i] >= 0) inv.push_back({s.ids[i], s.ids[s.involution[i]]});
  j["involution"] = std::move(inv);
  return j;
}

MeasuredReebGraph graph_from_json(const Json& j) {
  MeasuredReebGraph g;
  IdMap node_ids, edge_ids;
  for (const auto& n : array_field(j, "nodes")) {
    ReebNode node;
    node.id = int_field(n, "id");
    node.f = rational_from_json(field(n, "f"));
    node_ids.add(node.id, static_cast<int>(g.nodes.size()), "node");
    g.nodes.push_back(std::move(node));
  }
  bool any_mass = false, all_mass = true;
  for (const auto& e : array_field(j, "edges")) {
    ReebEdge edge;
    edge.id = int_field(e, "id");
    edge.tail = node_ids.at(int_field(e, "tail"), "node");
    edge.head = node_ids.at(int_field(e, "head"), "node");
    edge_ids.add(edge.id, static_cast<int>(g.edges.size()), "edge");
    const Rational lo = g.nodes[edge.tail].f, hi = g.nodes[edge.head].f;
    if (e.contains("profile")) {
      const Json& p = field(e, "profile");
      edge.profile.lo = lo;
      edge.profile.hi = hi;
      for (const auto& b : array_field(p, "breaks")) edge.profile.breaks.push_back(rational_from_json(b));
      for (const auto& q : array_field(p, "pieces")) {
        if (!q.is_array() || q.size() != 3) throw InputError("profile piece must be [a, b, c]: " + q.dump());
        edge.profile.pieces.push_back({rational_from_json(q[0]), rational_from_json(q[1]), rational_from_json(q[2])});
      }
      if (edge.profile.pieces.size() != edge.profile.breaks.size() + 1)
        throw InputError("edge " + std::to_string(edge.id) + ": pieces must outnumber breaks by one");
      if (e.contains("mass") && rational_from_json(e.at("mass")) != edge.profile.mass())
        throw InputError("edge " + std::to_string(edge.id) + ": mass disagrees with its profile");
      any_mass = true;
    } else if (e.contains("mass")) {
      edge.profile = EdgeMeasureProfile::uniform(lo, hi, rational_from_json(e.at("mass")));
      any_mass = true;
    } else {
      all_mass = false;
      edge.profile = EdgeMeasureProfile::uniform(lo, hi, 0);
    }
    g.edges.push_back(std::move(edge));
  }
  if (any_mass && !all_mass) throw InputError("either every edge or no edge carries a mass");
  g.measured = any_mass;
  if (j.contains("iota")) {
    const Json& iota = field(j, "iota");
    g.node_involution.assign(g.nodes.size(), -1);
    g.edge_involution.assign(g.edges.size(), -1);
    read_involution(array_field(iota, "nodes"), node_ids, "node", g.node_involution);
    read_involution(array_field(iota, "edges"), edge_ids, "edge", g.edge_involution);
    for (int v : g.node_involution)
      if (v < 0) throw InputError("iota leaves a node unmapped");
    for (int v : g.edge_involution)
      if (v < 0) throw InputError("iota leaves an edge unmapped");
  }
  return g;
}

Json graph_to_json(const MeasuredReebGraph& g) {
  Json j;
  Json nodes = Json::array();
  for (const auto& n : g.nodes) nodes.push_back({{"id", n.id}, {"f", rational_to_json(n.f)}});
  j["nodes"] = std::move(nodes);
  Json edges = Json::array();
  for (const auto& e : g.edges) {
    Json je{{"id", e.id}, {"tail", g.nodes[e.tail].id}, {"head", g.nodes[e.head].id}};
    if (g.measured) {
      je["mass"] = rational_to_json(e.profile.mass());
      Json breaks = Json::array(), pieces = Json::array();
      for (const auto& b : e.profile.breaks) breaks.push_back(rational_to_json(b));
      for (const auto& q : e.profile.pieces)
        pieces.push_back({rational_to_json(q.a), rational_to_json(q.b), rational_to_json(q.c)});
      je["profile"] = {{"breaks", std::move(breaks)}, {"pieces", std::move(pieces)}};
    }
    edges.push_back(std::move(je));
  }
  j["edges"] = std::move(edges);
  if (g.has_involution()) {
    Json in = Json::array(), ie = Json::array();
    for (std::size_t n = 0; n < g.nodes.size(); ++n) in.push_back({g.nodes[n].id, g.nodes[g.node_involution[n]].id});
    for (std::size_t e = 0; e < g.edges.size(); ++e) ie.push_back({g.edges[e].id, g.edges[g.edge_involution[e]].id});
    j["iota"] = {{"nodes", std::move(in)}, {"edges", std::move(ie)}};
  }
  return j;
}

CirculationGraph circulation_from_json(const Json& j) {
  CirculationGraph c;
  c.base = graph_from_json(j);
  for (const auto& e : array_field(j, "edges")) c.cref.push_back(rational_from_json(field(e, "cref")));
  return c;
}

Json circulation_to_json(const CirculationGraph& c) {
  Json j = graph_to_json(c.base);
  for (std::size_t e = 0; e < c.cref.size(); ++e) j["edges"][e]["cref"] = rational_to_json(c.cref[e]);
  return j;
}

DiscreteOneForm one_form_from_json(const SurfaceComplex& s, const Connectivity& c, const Json& j) {
  IdMap ids;
  for (std::size_t i = 0; i < s.ids.size(); ++i) ids.add(s.ids[i], static_cast<int>(i), "vertex");
  DiscreteOneForm alpha = DiscreteOneForm::zero(c);
  std::vector<bool> seen(c.edges.size(), false);
  for (const auto& entry : array_field(j, "edges")) {
    if (!entry.is_array() || entry.size() != 3) throw InputError("1-form entry must be [u, v, value]: " + entry.dump());
    const int u = ids.at(as_int(entry[0]), "vertex"), v = ids.at(as_int(entry[1]), "vertex");
    const int e = c.edge_index(u, v);
    if (e < 0) throw InputError("1-form names a non-edge " + entry[0].dump() + "-" + entry[1].dump());
    if (seen[e]) throw InputError("1-form lists edge " + entry[0].dump() + "-" + entry[1].dump() + " twice");
    seen[e] = true;
    alpha.set_oriented(c, u, v, rational_from_json(entry[2]));
  }
  return alpha;
}

Json one_form_to_json(const SurfaceComplex& s, const Connectivity& c, const DiscreteOneForm& alpha) {
  Json edges = Json::array();
  for (std::size_t e = 0; e < c.edges.size(); ++e)
    edges.push_back({s.ids[c.edges[e][0]], s.ids[c.edges[e][1]], rational_to_json(alpha.values[e])});
  return {{"edges", std::move(edges)}};
}

Json mapping_to_json(const MeasuredReebGraph& g1, const MeasuredReebGraph& g2, const GraphMapping& m) {
  Json nodes = Json::array(), edges = Json::array();
  for (std::size_t n = 0; n < m.nodes.size(); ++n) nodes.push_back({g1.nodes[n].id, g2.nodes[m.nodes[n]].id});
  for (std::size_t e = 0; e < m.edges.size(); ++e) edges.push_back({g1.edges[e].id, g2.edges[m.edges[e]].id});
  return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

Json invariant_to_json(const InvariantVector& v) {
  Json values = Json::array(), masses = Json::array();
  for (const auto& x : v.node_values) values.push_back(rational_to_json(x));
  for (const auto& x : v.masses) masses.push_back(rational_to_json(x));
  return {{"betti1", v.betti1}, {"fix_count", v.fix_count}, {"node_values", std::move(values)},
          {"masses", std::move(masses)}};
}

Json casimir_to_json(const CasimirTable& t) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < t.orders.size(); ++i) {
    Json per_edge = Json::array();
    for (const auto& row : t.per_edge) per_edge.push_back(rational_to_json(row[i]));
    Json r{{"k", t.orders[i]}, {"global", rational_to_json(t.global[i])}};
    r["quotient"] = t.quotient[i] ? rational_to_json(*t.quotient[i]) : Json(nullptr);
    r["per_edge"] = std::move(per_edge);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string graph_to_dot(const MeasuredReebGraph& g) {
  std::ostringstream out;
  out << "digraph reeb {\n  rankdir=BT;\n  node [shape=circle, fontsize=10];\n";
  // one rank per node: f-values are distinct
  for (const auto& n : g.nodes)
    out << "  n" << n.id << " [label=\"" << n.id << "\\nf=" << format_rational(n.f) << "\"];\n";
  std::vector<int> order(g.nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return g.nodes[a].f < g.nodes[b].f; });
  for (std::size_t i = 0; i + 1 < order.size(); ++i)
    out << "  n" << g.nodes[order[i]].id << " -> n" << g.nodes[order[i + 1]].id << " [style=invis];\n";
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& edge = g.edges[e];
    out << "  n" << g.nodes[edge.tail].id << " -> n" << g.nodes[edge.head].id << " [label=\"e" << edge.id;
    if (g.measured) out << " m=" << format_rational(edge.profile.mass());
    out << "\"";
    if (g.has_involution() && g.edge_involution[e] == static_cast<int>(e)) out << ", color=red, penwidth=2";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace reebinv
