#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "latticecalc/rational.hpp"

namespace latticecalc {

using StateIndex = int;

// Finite local state space with an optional distinguished base state.
class StateSpace {
 public:
  StateSpace() = default;
  explicit StateSpace(std::vector<std::string> labels,
                      std::optional<StateIndex> base = std::nullopt);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(StateIndex s) const { return labels_.at(static_cast<std::size_t>(s)); }
  std::optional<StateIndex> base() const { return base_; }

  // Throws input_error("unknown_state") when absent.
  StateIndex index_of(std::string_view label) const;
  std::optional<StateIndex> find(std::string_view label) const;
  bool contains(StateIndex s) const { return s >= 0 && s < size(); }

  friend bool operator==(const StateSpace&, const StateSpace&) = default;

 private:
  std::vector<std::string> labels_;
  std::optional<StateIndex> base_;
};

struct StatePair {
  StateIndex first = 0;
  StateIndex second = 0;

  StatePair swapped() const { return {second, first}; }
  friend auto operator<=>(const StatePair&, const StatePair&) = default;
};

// One directed edge ((s1,s2),(t1,t2)) of the pair graph.
struct PhiEdge {
  StatePair from;
  StatePair to;

  friend auto operator<=>(const PhiEdge&, const PhiEdge&) = default;
};

enum class SymmetryMode { lenient, strict };

// A symmetric digraph on S x S. Edges are kept sorted and deduplicated; the
// vertex (s1,s2) has dense index s1 * |S| + s2.
class Interaction {
 public:
  Interaction() = default;

  // Lenient mode adds missing reverse edges; strict mode rejects them with
  // input_error("asymmetric").
  Interaction(StateSpace states, std::vector<PhiEdge> edges, SymmetryMode mode);

  const StateSpace& states() const { return states_; }
  int num_states() const { return states_.size(); }
  const std::vector<PhiEdge>& edges() const { return edges_; }

  std::size_t pair_count() const;
  std::size_t pair_index(StatePair p) const;
  StatePair pair_at(std::size_t index) const;

  // Targets reachable by one edge from p, in lexicographic order.
  const std::vector<StatePair>& neighbors(StatePair p) const;

  friend bool operator==(const Interaction& a, const Interaction& b) {
    return a.states_ == b.states_ && a.edges_ == b.edges_;
  }

 private:
  StateSpace states_;
  std::vector<PhiEdge> edges_;
  std::vector<std::vector<StatePair>> adjacency_;
};

// Built-in ids: "exclusion", "multispecies:<kappa>", "two-species-ac", "quastel2".
Interaction builtin_interaction(std::string_view id);
std::vector<std::string> builtin_interaction_ids();

struct PairComponents {
  std::vector<int> component_id;  // indexed by Interaction::pair_index
  int count = 0;
};

// Components are numbered in order of their smallest pair index.
PairComponents pair_components(const Interaction& phi);

bool is_exchangeable(const Interaction& phi);

// A per-state value; normalised so that values[base] == 0 when produced here.
struct ConservedQuantity {
  std::vector<Rational> values;

  friend bool operator==(const ConservedQuantity&, const ConservedQuantity&) = default;
};

// First edge on which xi(s1)+xi(s2) != xi(t1)+xi(t2), if any.
std::optional<PhiEdge> conservation_violation(const Interaction& phi, const ConservedQuantity& xi);

// Basis of conserved quantities modulo constants, normalised at `base`.
std::vector<ConservedQuantity> consv_basis(const Interaction& phi, StateIndex base);

// Shortest path from (s1,s2) to (s2,s1) in the pair graph, ties broken by
// lexicographic neighbour order. Throws domain_error("not_exchangeable").
std::vector<PhiEdge> pair_exchange_path(const Interaction& phi, StateIndex s1, StateIndex s2);

}  // namespace latticecalc
