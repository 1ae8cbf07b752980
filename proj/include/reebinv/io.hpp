#pragma once

#include <string>

#include <json.hpp>

#include "reebinv/circulation.hpp"
#include "reebinv/classify.hpp"
#include "reebinv/mesh.hpp"
#include "reebinv/reeb.hpp"

namespace reebinv {

using Json = nlohmann::ordered_json;

/// Whole file, or stdin for "-".
std::string read_text(const std::string& path);
/// Whole file, or stdout for "-".
void write_text(const std::string& path, const std::string& text);
/// Parses JSON, turning syntax errors into InputError.
Json parse_json(const std::string& text);
std::string dump_json(const Json& j);

Rational rational_from_json(const Json& j);
Json rational_to_json(const Rational& r);

SurfaceComplex mesh_from_json(const Json& j);
Json mesh_to_json(const SurfaceComplex& s);

/// Edges without a profile get a uniform one of the stated mass; a graph with no
/// masses at all is read as unmeasured.
MeasuredReebGraph graph_from_json(const Json& j);
/// Node "vertex" links and the cellmap are not serialized.
Json graph_to_json(const MeasuredReebGraph& g);

CirculationGraph circulation_from_json(const Json& j);
Json circulation_to_json(const CirculationGraph& c);

/// Entries are [u, v, value] with u, v vertex ids; value is alpha along u -> v.
DiscreteOneForm one_form_from_json(const SurfaceComplex& s, const Connectivity& c, const Json& j);
Json one_form_to_json(const SurfaceComplex& s, const Connectivity& c, const DiscreteOneForm& alpha);

/// Mapping as id pairs.
Json mapping_to_json(const MeasuredReebGraph& g1, const MeasuredReebGraph& g2, const GraphMapping& m);
Json invariant_to_json(const InvariantVector& v);
Json casimir_to_json(const CasimirTable& t);

/// Nodes ranked bottom to top by f; iota-invariant edges drawn bold red.
std::string graph_to_dot(const MeasuredReebGraph& g);

}  // namespace reebinv
