#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "latticecalc/interaction.hpp"
#include "latticecalc/site_graph.hpp"
#include "latticecalc/uniform_function.hpp"

namespace latticecalc {

// One move of (S^X, Φ_E): the φ-edge `phi_edge` fired on the ordered graph
// edge (x, y), changing only the states at x and y.
struct Transition {
  Configuration before;
  Configuration after;
  Edge edge;
  PhiEdge phi_edge;
};

// Builds the transition and checks both invariants; throws domain_error
// ("not_a_transition") if `before` does not carry phi_edge.from on the edge.
Transition make_transition(const Interaction& phi, const Configuration& before, Edge edge, const PhiEdge& phi_edge);

using EdgeWindow = std::vector<Edge>;

// Every ordered edge of the graph.
EdgeWindow full_edge_window(const SiteGraph& g);

// Ordered edges with both endpoints in [lo, hi].
EdgeWindow edge_window_between(const SiteGraph& g, Site lo, Site hi);

// Transitions out of eta whose firing edge lies in the window, in (edge,
// φ-edge) order. Moves producing an already listed configuration are skipped.
std::vector<Transition> neighbors(const Interaction& phi, const Configuration& eta, const EdgeWindow& window);

struct ComponentResult {
  std::vector<Configuration> members;  // canonical order
  bool truncated = false;
  // BFS tree: for every member other than the start, the transition that
  // first reached it. Keyed by index into `members`.
  std::map<std::size_t, Transition> parent;
};

ComponentResult component_bfs(const Interaction& phi, const Configuration& eta, const EdgeWindow& window,
                              std::size_t max_states);

// Transitions along the BFS tree from the start of the search to `target`.
std::vector<Transition> tree_path(const ComponentResult& component, const Configuration& target);

// A transition sequence from eta to eta with the states at x and y exchanged.
std::vector<Transition> swap_path(const Interaction& phi, const Configuration& eta, Site x, Site y);

// sigma as a map on its finite domain Λ; eta^σ_x = eta_{σ(x)}.
using Permutation = std::map<Site, Site>;

// Sites in Λ; throws input_error("not_a_bijection").
void check_permutation(const Permutation& sigma, const SiteGraph& g);
Configuration permuted(const Configuration& eta, const Permutation& sigma);
std::vector<Transition> permutation_path(const Interaction& phi, const Configuration& eta, const Permutation& sigma);

// Applies the transitions in order starting from eta, validating each step.
Configuration replay(const Interaction& phi, const Configuration& eta, const std::vector<Transition>& path);

struct InvarianceCheck {
  bool invariant = true;
  std::optional<Transition> witness;
  std::optional<Rational> witness_difference;
  std::size_t probes = 0;
  std::size_t transitions_checked = 0;
  std::string caveat;
};

InvarianceCheck is_invariant(const UniformFunction& f, const Interaction& phi, const EdgeWindow& window,
                             const std::vector<Configuration>& probes);

// All configurations with support inside `sites` and at most max_support
// off-base sites, in canonical order.
std::vector<Configuration> configurations_up_to(const GraphPtr& graph, int num_states, StateIndex base,
                                                const SiteSet& sites, std::size_t max_support,
                                                std::size_t max_count);

}  // namespace latticecalc
