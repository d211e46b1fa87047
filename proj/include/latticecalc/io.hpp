#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "latticecalc/cohomology.hpp"
#include "latticecalc/interaction.hpp"
#include "latticecalc/local_function.hpp"
#include "latticecalc/site_graph.hpp"
#include "latticecalc/transition_system.hpp"
#include "latticecalc/uniform_function.hpp"

// JSON forms of every value type. Keys are emitted in a fixed order and
// rationals as canonical "p/q" strings, so equal values serialise to equal
// bytes. Loaders throw input_error on malformed documents.
namespace latticecalc::io {

using Json = nlohmann::ordered_json;

Json parse_json_text(const std::string& text, const std::string& origin);
Json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);

Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);

// {"states":[...],"base":"0","edges":[[["1","0"],["0","1"]]],"symmetry":"lenient"}
Interaction interaction_from_json(const Json& j);
Json interaction_to_json(const Interaction& phi);
// A built-in id or the path of an interaction file.
Interaction resolve_interaction(const std::string& spec);

// {"kind":"lattice_z","k":1,"window":[-8,8]}, {"kind":"path","n":4},
// {"kind":"cycle","n":5} or {"kind":"explicit","vertices":[...],"edges":[...]}.
SiteGraph graph_from_json(const Json& j, const Caps& caps = {});
Json graph_to_json(const SiteGraph& g);
// A file path or a shorthand path:N, cycle:N, lattice_z:K:A:B.
SiteGraph resolve_graph(const std::string& spec, const Caps& caps = {});

// Sites are integers on integer-keyed graphs and vertex labels on explicit ones.
Site site_from_json(const SiteGraph& g, const Json& j);
Json site_to_json(const SiteGraph& g, Site x);

// {"support":[0,1],"table":{"1,1":"1"}}; omitted tuples are zero.
LocalFunction local_function_from_json(const Json& j, const StateSpace& states, const SiteGraph& g);
Json local_function_to_json(const LocalFunction& f, const StateSpace& states, const SiteGraph& g);

// {"base":"0","components":[...]}; every component must have exact support.
Expansion components_from_json(const Json& j, const StateSpace& states, const SiteGraph& g, StateIndex base);
Json components_to_json(const Expansion& components, const StateSpace& states, const SiteGraph& g, StateIndex base);

// Explicit: {"base","radius","constant","components"}; translated:
// {"kind":"translated","base","radius","constant","template"}. Writers also
// embed "states" and "graph" so the file stands alone; loaders use them when
// the caller does not supply a state space or graph.
struct LoadedFunction {
  StateSpace states;
  UniformFunction function;
};
LoadedFunction uniform_function_from_json(const Json& j, const std::optional<StateSpace>& states,
                                          const GraphPtr& graph);
Json uniform_function_to_json(const UniformFunction& f, const StateSpace& states, bool embed = true);

// {"base":"0","assignments":[[2,"1"],[5,"1"]]} or {"values":["1","0",...]}
// listing one state per vertex.
// "base" defaults to default_base when absent.
Configuration configuration_from_json(const Json& j, const StateSpace& states, const GraphPtr& graph,
                                      StateIndex default_base);
// Inline form "2=1,5=1" (site=state pairs); the empty string is the ground state.
Configuration configuration_from_inline(const std::string& text, const StateSpace& states, const GraphPtr& graph,
                                        StateIndex base);
Json configuration_to_json(const Configuration& eta, const StateSpace& states);

Json conserved_to_json(const ConservedQuantity& xi, const StateSpace& states);
Json phi_edge_to_json(const PhiEdge& e, const StateSpace& states);
Json transition_to_json(const Transition& t, const StateSpace& states);
Json summary_to_json(const CochainSpaceSummary& s);
Json extraction_to_json(const ExtractionResult& r, const StateSpace& states, const SiteGraph& g);
Json kernel_to_json(const KernelResult& r, const StateSpace& states);

}  // namespace latticecalc::io
