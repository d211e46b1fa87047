#include "latticecalc/interaction.hpp"

#include <algorithm>
#include <charconv>
#include <queue>
#include <set>

#include "latticecalc/error.hpp"
#include "latticecalc/linalg.hpp"

namespace latticecalc {

StateSpace::StateSpace(std::vector<std::string> labels, std::optional<StateIndex> base)
    : labels_(std::move(labels)), base_(base) {
  if (labels_.empty()) input_error("empty_state_space", "state space must be non-empty");
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) input_error("duplicate_state", "duplicate state label \"" + l + "\"");
  }
  if (base_ && !contains(*base_)) input_error("unknown_state", "base index out of range");
}

std::optional<StateIndex> StateSpace::find(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return static_cast<StateIndex>(i);
  }
  return std::nullopt;
}

StateIndex StateSpace::index_of(std::string_view label) const {
  auto s = find(label);
  if (!s) input_error("unknown_state", "unknown state label \"" + std::string(label) + "\"");
  return *s;
}

Interaction::Interaction(StateSpace states, std::vector<PhiEdge> edges, SymmetryMode mode)
    : states_(std::move(states)) {
  const int n = states_.size();
  auto valid = [&](StatePair p) { return states_.contains(p.first) && states_.contains(p.second); };
  for (const auto& e : edges) {
    if (!valid(e.from) || !valid(e.to)) input_error("unknown_state", "interaction edge references unknown state");
  }
  std::set<PhiEdge> edge_set(edges.begin(), edges.end());
  for (const auto& e : edges) {
    const PhiEdge reverse{e.to, e.from};
    if (edge_set.count(reverse) == 0) {
      if (mode == SymmetryMode::strict) {
        input_error("asymmetric", "edge ((" + states_.label(e.from.first) + "," + states_.label(e.from.second) +
                                      "),(" + states_.label(e.to.first) + "," + states_.label(e.to.second) +
                                      ")) has no reverse");
      }
      edge_set.insert(reverse);
    }
  }
  edges_.assign(edge_set.begin(), edge_set.end());
  adjacency_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), {});
  for (const auto& e : edges_) adjacency_[pair_index(e.from)].push_back(e.to);
}

std::size_t Interaction::pair_count() const {
  const auto n = static_cast<std::size_t>(num_states());
  return n * n;
}

std::size_t Interaction::pair_index(StatePair p) const {
  return static_cast<std::size_t>(p.first) * static_cast<std::size_t>(num_states()) +
         static_cast<std::size_t>(p.second);
}

StatePair Interaction::pair_at(std::size_t index) const {
  const auto n = static_cast<std::size_t>(num_states());
  return {static_cast<StateIndex>(index / n), static_cast<StateIndex>(index % n)};
}

const std::vector<StatePair>& Interaction::neighbors(StatePair p) const { return adjacency_.at(pair_index(p)); }

namespace {

Interaction multispecies(int kappa, bool drop_one_two) {
  std::vector<std::string> labels;
  for (int j = 0; j <= kappa; ++j) labels.push_back(std::to_string(j));
  std::vector<PhiEdge> edges;
  for (int j = 0; j <= kappa; ++j) {
    for (int k = 0; k <= kappa; ++k) {
      if (j == k) continue;
      if (drop_one_two && ((j == 1 && k == 2) || (j == 2 && k == 1))) continue;
      edges.push_back({{j, k}, {k, j}});
    }
  }
  return Interaction(StateSpace(std::move(labels), 0), std::move(edges), SymmetryMode::strict);
}

Interaction two_species_annihilation_creation() {
  // States ordered -1, 0, +1.
  StateSpace states({"-1", "0", "1"}, 1);
  const StateIndex minus = 0, zero = 1, plus = 2;
  std::vector<PhiEdge> edges = {
      {{minus, zero}, {zero, minus}}, {{plus, zero}, {zero, plus}},  {{plus, minus}, {minus, plus}},
      {{plus, minus}, {zero, zero}},  {{zero, zero}, {minus, plus}},
  };
  return Interaction(std::move(states), std::move(edges), SymmetryMode::lenient);
}

}  // namespace

Interaction builtin_interaction(std::string_view id) {
  if (id == "exclusion") return multispecies(1, false);
  if (id == "two-species-ac") return two_species_annihilation_creation();
  if (id == "quastel2") return multispecies(2, true);
  constexpr std::string_view prefix = "multispecies:";
  if (id.substr(0, prefix.size()) == prefix) {
    std::string_view rest = id.substr(prefix.size());
    int kappa = 0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), kappa);
    if (ec != std::errc{} || ptr != rest.data() + rest.size() || kappa < 1) {
      input_error("unknown_interaction", "bad multispecies id \"" + std::string(id) + "\"");
    }
    return multispecies(kappa, false);
  }
  input_error("unknown_interaction", "unknown built-in interaction \"" + std::string(id) + "\"");
}

std::vector<std::string> builtin_interaction_ids() {
  return {"exclusion", "multispecies:1", "multispecies:2", "multispecies:3", "two-species-ac", "quastel2"};
}

PairComponents pair_components(const Interaction& phi) {
  PairComponents out;
  out.component_id.assign(phi.pair_count(), -1);
  for (std::size_t start = 0; start < phi.pair_count(); ++start) {
    if (out.component_id[start] >= 0) continue;
    const int id = out.count++;
    std::queue<std::size_t> queue;
    queue.push(start);
    out.component_id[start] = id;
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop();
      for (StatePair w : phi.neighbors(phi.pair_at(v))) {
        const std::size_t wi = phi.pair_index(w);
        if (out.component_id[wi] < 0) {
          out.component_id[wi] = id;
          queue.push(wi);
        }
      }
    }
  }
  return out;
}

bool is_exchangeable(const Interaction& phi) {
  const PairComponents comps = pair_components(phi);
  for (std::size_t i = 0; i < phi.pair_count(); ++i) {
    const StatePair p = phi.pair_at(i);
    if (comps.component_id[i] != comps.component_id[phi.pair_index(p.swapped())]) return false;
  }
  return true;
}

std::optional<PhiEdge> conservation_violation(const Interaction& phi, const ConservedQuantity& xi) {
  if (xi.values.size() != static_cast<std::size_t>(phi.num_states())) {
    input_error("bad_conserved_quantity", "conserved quantity must be defined on every state");
  }
  auto v = [&](StateIndex s) -> const Rational& { return xi.values[static_cast<std::size_t>(s)]; };
  for (const auto& e : phi.edges()) {
    if (v(e.from.first) + v(e.from.second) != v(e.to.first) + v(e.to.second)) return e;
  }
  return std::nullopt;
}

std::vector<ConservedQuantity> consv_basis(const Interaction& phi, StateIndex base) {
  if (!phi.states().contains(base)) input_error("unknown_state", "base state out of range");
  const auto n = static_cast<std::size_t>(phi.num_states());
  linalg::EchelonBuilder system(n);
  linalg::RationalVector normalise(n, Rational(0));
  normalise[static_cast<std::size_t>(base)] = 1;
  system.add_row(normalise);
  for (const auto& e : phi.edges()) {
    linalg::RationalVector row(n, Rational(0));
    row[static_cast<std::size_t>(e.from.first)] += 1;
    row[static_cast<std::size_t>(e.from.second)] += 1;
    row[static_cast<std::size_t>(e.to.first)] -= 1;
    row[static_cast<std::size_t>(e.to.second)] -= 1;
    system.add_row(row);
  }
  std::vector<ConservedQuantity> basis;
  for (auto& v : system.nullspace()) basis.push_back(ConservedQuantity{std::move(v)});
  return basis;
}

std::vector<PhiEdge> pair_exchange_path(const Interaction& phi, StateIndex s1, StateIndex s2) {
  if (!phi.states().contains(s1) || !phi.states().contains(s2)) input_error("unknown_state", "state out of range");
  if (s1 == s2) return {};
  const StatePair source{s1, s2};
  const StatePair target{s2, s1};
  std::vector<std::ptrdiff_t> parent(phi.pair_count(), -2);
  std::queue<std::size_t> queue;
  parent[phi.pair_index(source)] = -1;
  queue.push(phi.pair_index(source));
  while (!queue.empty() && parent[phi.pair_index(target)] == -2) {
    const std::size_t v = queue.front();
    queue.pop();
    for (StatePair w : phi.neighbors(phi.pair_at(v))) {
      const std::size_t wi = phi.pair_index(w);
      if (parent[wi] == -2) {
        parent[wi] = static_cast<std::ptrdiff_t>(v);
        queue.push(wi);
      }
    }
  }
  if (parent[phi.pair_index(target)] == -2) {
    const auto& st = phi.states();
    domain_error("not_exchangeable",
                 "(" + st.label(s1) + "," + st.label(s2) + ") and its swap lie in different components");
  }
  std::vector<PhiEdge> path;
  for (std::size_t v = phi.pair_index(target); parent[v] != -1; v = static_cast<std::size_t>(parent[v])) {
    path.push_back({phi.pair_at(static_cast<std::size_t>(parent[v])), phi.pair_at(v)});
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace latticecalc
