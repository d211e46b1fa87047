#include "latticecalc/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "latticecalc/error.hpp"

namespace latticecalc::io {
namespace {

const Json& require(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) input_error("bad_" + what, what + " is missing \"" + key + "\"");
  return j.at(key);
}

std::string require_string(const Json& j, const std::string& what) {
  if (!j.is_string()) input_error("bad_" + what, what + ": expected a string");
  return j.get<std::string>();
}

long long require_integer(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) input_error("bad_" + what, what + ": expected an integer");
  return j.get<long long>();
}

SymmetryMode symmetry_of(const Json& j, const std::string& what) {
  if (!j.contains("symmetry")) return SymmetryMode::lenient;
  const std::string mode = require_string(j.at("symmetry"), what);
  if (mode == "lenient") return SymmetryMode::lenient;
  if (mode == "strict") return SymmetryMode::strict;
  input_error("bad_" + what, "symmetry must be \"lenient\" or \"strict\"");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::string tuple_key(std::span<const StateIndex> tuple, const StateSpace& states) {
  std::string key;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) key += ',';
    key += states.label(tuple[i]);
  }
  return key;
}

Json sites_to_json(const SiteGraph& g, const SiteSet& sites) {
  Json out = Json::array();
  for (Site x : sites) out.push_back(site_to_json(g, x));
  return out;
}

StateSpace states_from_json(const Json& j) {
  std::vector<std::string> labels;
  if (!j.is_array()) input_error("bad_states", "\"states\" must be an array of labels");
  for (const auto& l : j) labels.push_back(require_string(l, "states"));
  return StateSpace(std::move(labels));
}

Json states_to_json(const StateSpace& states) {
  Json out = Json::array();
  for (const auto& l : states.labels()) out.push_back(l);
  return out;
}

}  // namespace

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    input_error("bad_json", origin + ": " + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) input_error("io_error", "cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Json read_json_file(const std::string& path) { return parse_json_text(read_text_file(path), path); }

Json rational_to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  input_error("bad_rational", "rational must be a string \"p/q\" or an integer");
}

Interaction interaction_from_json(const Json& j) {
  const StateSpace plain = states_from_json(require(j, "states", "interaction"));
  std::optional<StateIndex> base;
  if (j.contains("base")) base = plain.index_of(require_string(j.at("base"), "interaction"));
  StateSpace states(plain.labels(), base);
  std::vector<PhiEdge> edges;
  for (const auto& e : require(j, "edges", "interaction")) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_array() || e[0].size() != 2 || !e[1].is_array() ||
        e[1].size() != 2) {
      input_error("bad_interaction", "each edge must be [[s1,s2],[t1,t2]]");
    }
    auto state = [&](const Json& l) { return states.index_of(require_string(l, "interaction")); };
    edges.push_back({{state(e[0][0]), state(e[0][1])}, {state(e[1][0]), state(e[1][1])}});
  }
  return Interaction(std::move(states), std::move(edges), symmetry_of(j, "interaction"));
}

Json interaction_to_json(const Interaction& phi) {
  const StateSpace& s = phi.states();
  Json out;
  out["states"] = states_to_json(s);
  if (s.base()) out["base"] = s.label(*s.base());
  Json edges = Json::array();
  for (const PhiEdge& e : phi.edges()) edges.push_back(phi_edge_to_json(e, s));
  out["edges"] = std::move(edges);
  out["symmetry"] = "strict";
  return out;
}

Interaction resolve_interaction(const std::string& spec) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(spec, ec)) return interaction_from_json(read_json_file(spec));
  return builtin_interaction(spec);
}

SiteGraph graph_from_json(const Json& j, const Caps& caps) {
  const std::string kind = require_string(require(j, "kind", "graph"), "graph");
  if (kind == "lattice_z") {
    const int k = j.contains("k") ? static_cast<int>(require_integer(j.at("k"), "graph")) : 1;
    const Json& w = require(j, "window", "graph");
    if (!w.is_array() || w.size() != 2) input_error("bad_graph", "window must be [a,b]");
    const bool infinite = !j.contains("window_of_infinite") || j.at("window_of_infinite").get<bool>();
    return SiteGraph::lattice_z(k, require_integer(w[0], "graph"), require_integer(w[1], "graph"), infinite, caps);
  }
  if (kind == "path") return SiteGraph::path(static_cast<int>(require_integer(require(j, "n", "graph"), "graph")), caps);
  if (kind == "cycle") return SiteGraph::cycle(static_cast<int>(require_integer(require(j, "n", "graph"), "graph")), caps);
  if (kind == "explicit") {
    std::vector<std::string> labels;
    for (const auto& v : require(j, "vertices", "graph")) labels.push_back(require_string(v, "graph"));
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& e : require(j, "edges", "graph")) {
      if (!e.is_array() || e.size() != 2) input_error("bad_graph", "each edge must be [u,v]");
      edges.emplace_back(require_string(e[0], "graph"), require_string(e[1], "graph"));
    }
    return SiteGraph::explicit_graph(std::move(labels), edges, symmetry_of(j, "graph"), caps);
  }
  input_error("bad_graph", "unknown graph kind \"" + kind + "\"");
}

Json graph_to_json(const SiteGraph& g) {
  Json out;
  switch (g.kind()) {
    case GraphKind::lattice_z:
      out["kind"] = "lattice_z";
      out["k"] = g.range();
      out["window"] = Json::array({g.window().first, g.window().second});
      if (!g.is_window_of_infinite()) out["window_of_infinite"] = false;
      break;
    case GraphKind::path:
      out["kind"] = "path";
      out["n"] = g.size();
      break;
    case GraphKind::cycle:
      out["kind"] = "cycle";
      out["n"] = g.size();
      break;
    case GraphKind::explicit_finite: {
      out["kind"] = "explicit";
      out["vertices"] = g.explicit_labels();
      Json edges = Json::array();
      for (const auto& [x, y] : g.edges()) edges.push_back(Json::array({g.label(x), g.label(y)}));
      out["edges"] = std::move(edges);
      out["symmetry"] = "strict";
      break;
    }
  }
  return out;
}

SiteGraph resolve_graph(const std::string& spec, const Caps& caps) {
  static const std::regex shorthand(R"(^(path|cycle):([0-9]+)$)");
  static const std::regex lattice(R"(^lattice_z:([0-9]+):(-?[0-9]+):(-?[0-9]+)$)");
  std::smatch m;
  if (std::regex_match(spec, m, shorthand)) {
    const int n = std::stoi(m[2]);
    return m[1] == "path" ? SiteGraph::path(n, caps) : SiteGraph::cycle(n, caps);
  }
  if (std::regex_match(spec, m, lattice)) {
    return SiteGraph::lattice_z(std::stoi(m[1]), std::stoll(m[2]), std::stoll(m[3]), true, caps);
  }
  std::error_code ec;
  if (!std::filesystem::is_regular_file(spec, ec)) input_error("io_error", "no graph file or shorthand \"" + spec + "\"");
  return graph_from_json(read_json_file(spec), caps);
}

Site site_from_json(const SiteGraph& g, const Json& j) {
  if (g.kind() == GraphKind::explicit_finite) {
    const std::string label = require_string(j, "site");
    if (auto x = g.find_label(label)) return *x;
    input_error("unknown_vertex", "unknown vertex \"" + label + "\"");
  }
  if (j.is_string()) {
    if (auto x = g.find_label(j.get<std::string>())) return *x;
    input_error("unknown_vertex", "unknown vertex \"" + j.get<std::string>() + "\"");
  }
  return static_cast<Site>(require_integer(j, "site"));
}

Json site_to_json(const SiteGraph& g, Site x) {
  if (g.kind() == GraphKind::explicit_finite) return g.label(x);
  return x;
}

LocalFunction local_function_from_json(const Json& j, const StateSpace& states, const SiteGraph& g) {
  std::vector<Site> given;
  for (const auto& s : require(j, "support", "function")) given.push_back(site_from_json(g, s));
  const SiteSet support = normalise_sites(given);
  if (support.size() != given.size()) input_error("bad_function", "support lists a site twice");
  std::vector<std::size_t> position(given.size());
  for (std::size_t i = 0; i < given.size(); ++i) {
    position[i] = static_cast<std::size_t>(std::lower_bound(support.begin(), support.end(), given[i]) - support.begin());
  }
  LocalFunction shape = LocalFunction::zero(states.size(), support);
  std::vector<Rational> table = shape.table();
  const Json& entries = require(j, "table", "function");
  if (!entries.is_object()) input_error("bad_function", "\"table\" must map tuples to values");
  std::vector<StateIndex> tuple(support.size());
  for (const auto& [key, value] : entries.items()) {
    const auto labels = support.empty() ? std::vector<std::string>{} : split(key, ',');
    if (labels.size() != support.size() || (support.empty() && !key.empty())) {
      input_error("bad_tuple", "tuple \"" + key + "\" does not match the support");
    }
    for (std::size_t i = 0; i < labels.size(); ++i) tuple[position[i]] = states.index_of(labels[i]);
    table[shape.entry_index(tuple)] = rational_from_json(value);
  }
  return LocalFunction(states.size(), support, std::move(table));
}

Json local_function_to_json(const LocalFunction& f, const StateSpace& states, const SiteGraph& g) {
  Json out;
  out["support"] = sites_to_json(g, f.support());
  Json table = Json::object();
  for (std::size_t i = 0; i < f.table().size(); ++i) {
    if (f.table()[i] == 0) continue;
    table[tuple_key(f.tuple_at(i), states)] = rational_to_json(f.table()[i]);
  }
  out["table"] = std::move(table);
  return out;
}

Expansion components_from_json(const Json& j, const StateSpace& states, const SiteGraph& g, StateIndex base) {
  Expansion out;
  const Json& list = j.is_array() ? j : require(j, "components", "function");
  for (const auto& c : list) {
    LocalFunction f = local_function_from_json(c, states, g);
    const SiteSet support = f.support();
    if (out.count(support)) input_error("duplicate_component", "two components share a support");
    out.emplace(support, ExactSupportFunction(std::move(f), base));
  }
  return out;
}

Json components_to_json(const Expansion& components, const StateSpace& states, const SiteGraph& g, StateIndex base) {
  Json out;
  out["base"] = states.label(base);
  Json list = Json::array();
  for (const auto& [lambda, component] : components) list.push_back(local_function_to_json(component.function(), states, g));
  out["components"] = std::move(list);
  return out;
}

LoadedFunction uniform_function_from_json(const Json& j, const std::optional<StateSpace>& states_in,
                                          const GraphPtr& graph_in) {
  std::optional<StateSpace> embedded;
  if (j.contains("states")) embedded = states_from_json(j.at("states"));
  if (states_in && embedded && states_in->labels() != embedded->labels()) {
    input_error("state_space_mismatch", "function file declares different states");
  }
  if (!states_in && !embedded) input_error("bad_function", "no state space: pass --interaction or embed \"states\"");
  const StateSpace states = states_in ? StateSpace(states_in->labels()) : *embedded;

  GraphPtr graph = graph_in;
  if (j.contains("graph")) {
    GraphPtr own = share(graph_from_json(j.at("graph")));
    if (graph && !same_graph(graph, own)) input_error("graph_mismatch", "function file declares a different graph");
    if (!graph) graph = own;
  }
  if (!graph) input_error("bad_function", "no graph: pass --graph or embed \"graph\"");

  const StateIndex base = states.index_of(require_string(require(j, "base", "function"), "function"));
  const Rational constant = j.contains("constant") ? rational_from_json(j.at("constant")) : Rational(0);
  const std::string kind = j.contains("kind") ? require_string(j.at("kind"), "function") : "explicit";
  if (kind != "explicit" && kind != "translated") input_error("bad_function", "unknown function kind \"" + kind + "\"");
  const bool translated = kind == "translated";
  const Expansion components =
      components_from_json(require(j, translated ? "template" : "components", "function"), states, *graph, base);

  int radius = 0;
  if (j.contains("radius")) {
    radius = static_cast<int>(require_integer(j.at("radius"), "function"));
  } else {
    for (const auto& [lambda, component] : components) {
      if (lambda.size() < 2) continue;
      const int span = static_cast<int>(lambda.back() - lambda.front());
      radius = std::max(radius, translated ? (span + graph->range() - 1) / graph->range() : graph->diameter(lambda));
    }
  }
  if (translated) {
    return {states, UniformFunction::make_translated(graph, states.size(), base, radius, components, constant)};
  }
  return {states, UniformFunction::make_explicit(graph, states.size(), base, radius, components, constant)};
}

Json uniform_function_to_json(const UniformFunction& f, const StateSpace& states, bool embed) {
  Json out;
  const bool translated = f.kind() == FamilyKind::translated;
  out["kind"] = translated ? "translated" : "explicit";
  if (embed) {
    out["states"] = states_to_json(states);
    out["graph"] = graph_to_json(*f.graph());
  }
  out["base"] = states.label(f.base());
  out["radius"] = f.radius();
  out["constant"] = rational_to_json(f.constant());
  out[translated ? "template" : "components"] =
      components_to_json(f.components(), states, *f.graph(), f.base()).at("components");
  return out;
}

Configuration configuration_from_json(const Json& j, const StateSpace& states, const GraphPtr& graph,
                                      StateIndex default_base) {
  const StateIndex base =
      j.contains("base") ? states.index_of(require_string(j.at("base"), "configuration")) : default_base;
  std::vector<Configuration::Assignment> assignments;
  if (j.contains("values")) {
    const Json& values = j.at("values");
    if (!values.is_array() || values.size() != graph->size()) {
      input_error("bad_configuration", "\"values\" must list one state per vertex");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      assignments.emplace_back(graph->vertices()[i], states.index_of(require_string(values[i], "configuration")));
    }
  } else {
    for (const auto& a : require(j, "assignments", "configuration")) {
      if (!a.is_array() || a.size() != 2) input_error("bad_configuration", "assignments are [site, state] pairs");
      assignments.emplace_back(site_from_json(*graph, a[0]), states.index_of(require_string(a[1], "configuration")));
    }
  }
  return Configuration(graph, base, std::move(assignments));
}

Configuration configuration_from_inline(const std::string& text, const StateSpace& states, const GraphPtr& graph,
                                        StateIndex base) {
  std::vector<Configuration::Assignment> assignments;
  if (!text.empty()) {
    for (const std::string& item : split(text, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) input_error("bad_configuration", "expected site=state in \"" + item + "\"");
      const std::string site = item.substr(0, eq);
      auto x = graph->find_label(site);
      if (!x) input_error("unknown_vertex", "unknown vertex \"" + site + "\"");
      assignments.emplace_back(*x, states.index_of(item.substr(eq + 1)));
    }
  }
  return Configuration(graph, base, std::move(assignments));
}

Json configuration_to_json(const Configuration& eta, const StateSpace& states) {
  Json out;
  out["base"] = states.label(eta.base());
  Json list = Json::array();
  for (const auto& [x, s] : eta.assignments()) list.push_back(Json::array({site_to_json(*eta.graph(), x), states.label(s)}));
  out["assignments"] = std::move(list);
  return out;
}

Json conserved_to_json(const ConservedQuantity& xi, const StateSpace& states) {
  Json out = Json::object();
  for (std::size_t s = 0; s < xi.values.size(); ++s) {
    out[states.label(static_cast<StateIndex>(s))] = rational_to_json(xi.values[s]);
  }
  return out;
}

Json phi_edge_to_json(const PhiEdge& e, const StateSpace& s) {
  return Json::array({Json::array({s.label(e.from.first), s.label(e.from.second)}),
                      Json::array({s.label(e.to.first), s.label(e.to.second)})});
}

Json transition_to_json(const Transition& t, const StateSpace& s) {
  const SiteGraph& g = *t.before.graph();
  Json out;
  out["edge"] = Json::array({site_to_json(g, t.edge.first), site_to_json(g, t.edge.second)});
  out["from"] = Json::array({s.label(t.phi_edge.from.first), s.label(t.phi_edge.from.second)});
  out["to"] = Json::array({s.label(t.phi_edge.to.first), s.label(t.phi_edge.to.second)});
  return out;
}

Json summary_to_json(const CochainSpaceSummary& s) {
  Json out;
  out["dim_c0"] = s.dim_c0;
  out["dim_c1"] = s.dim_c1;
  out["rank_d"] = s.rank_d;
  out["h0"] = s.h0;
  out["h1"] = s.h1;
  out["h0_components"] = s.h0_components;
  out["h0_kernel"] = s.h0_kernel;
  return out;
}

Json extraction_to_json(const ExtractionResult& r, const StateSpace& states, const SiteGraph& g) {
  Json out;
  if (r.conserved) {
    out["outcome"] = "Conserved";
    out["xi"] = conserved_to_json(*r.conserved, states);
    return out;
  }
  const Violation& v = *r.violation;
  out["outcome"] = "Violation";
  out["kind"] = to_string(v.kind);
  out["message"] = v.message;
  out["sites"] = sites_to_json(g, v.sites);
  if (v.phi_edge) out["phi_edge"] = phi_edge_to_json(*v.phi_edge, states);
  return out;
}

Json kernel_to_json(const KernelResult& r, const StateSpace& states) {
  Json out;
  out["window"] = Json::array({r.a, r.b});
  out["R"] = r.radius;
  out["k"] = r.range;
  out["probe_bound"] = r.probe_bound;
  out["unknowns"] = r.unknowns;
  out["constraint_rank"] = r.constraint_rank;
  out["full_nullity"] = r.full_nullity;
  out["dimension"] = r.dimension;
  Json basis = Json::array();
  for (const auto& f : r.basis) basis.push_back(uniform_function_to_json(f, states, false));
  out["basis"] = std::move(basis);
  if (r.verified) out["verified"] = *r.verified;
  return out;
}

}  // namespace latticecalc::io
