#include "latticecalc/transition_system.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_map>

#include "latticecalc/error.hpp"

namespace latticecalc {

Transition make_transition(const Interaction& phi, const Configuration& before, Edge edge, const PhiEdge& phi_edge) {
  const auto [x, y] = edge;
  if (!before.graph()->has_edge(x, y)) {
    input_error("edge_not_in_graph", "(" + std::to_string(x) + "," + std::to_string(y) + ") is not a graph edge");
  }
  if (before.at(x) != phi_edge.from.first || before.at(y) != phi_edge.from.second) {
    domain_error("not_a_transition", "configuration does not match the source pair of the move");
  }
  const auto& targets = phi.neighbors(phi_edge.from);
  if (!std::binary_search(targets.begin(), targets.end(), phi_edge.to)) {
    domain_error("not_a_transition", "move is not an edge of the interaction");
  }
  Configuration after = before.with(x, phi_edge.to.first).with(y, phi_edge.to.second);
  return Transition{before, std::move(after), edge, phi_edge};
}

EdgeWindow full_edge_window(const SiteGraph& g) { return g.edges(); }

EdgeWindow edge_window_between(const SiteGraph& g, Site lo, Site hi) {
  EdgeWindow out;
  for (const auto& [x, y] : g.edges()) {
    if (x >= lo && x <= hi && y >= lo && y <= hi) out.emplace_back(x, y);
  }
  return out;
}

std::vector<Transition> neighbors(const Interaction& phi, const Configuration& eta, const EdgeWindow& window) {
  EdgeWindow edges = window;
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::vector<Transition> out;
  std::vector<Configuration> seen;
  for (const auto& [x, y] : edges) {
    if (!eta.graph()->has_edge(x, y)) {
      input_error("edge_not_in_graph", "window edge (" + std::to_string(x) + "," + std::to_string(y) +
                                           ") is not a graph edge");
    }
    const StatePair from{eta.at(x), eta.at(y)};
    for (const StatePair& to : phi.neighbors(from)) {
      Transition t{eta, eta.with(x, to.first).with(y, to.second), {x, y}, {from, to}};
      if (std::find(seen.begin(), seen.end(), t.after) != seen.end()) continue;
      seen.push_back(t.after);
      out.push_back(std::move(t));
    }
  }
  return out;
}

ComponentResult component_bfs(const Interaction& phi, const Configuration& eta, const EdgeWindow& window,
                              std::size_t max_states) {
  if (max_states == 0) input_error("bad_argument", "max_states must be positive");
  std::vector<Configuration> found{eta};
  std::vector<std::optional<Transition>> reached_by{std::nullopt};
  std::unordered_map<Configuration, std::size_t, ConfigurationHash> index{{eta, 0}};
  bool truncated = false;
  for (std::size_t head = 0; head < found.size() && !truncated; ++head) {
    const Configuration current = found[head];
    for (Transition& t : neighbors(phi, current, window)) {
      if (index.count(t.after)) continue;
      if (found.size() >= max_states) {
        truncated = true;
        break;
      }
      index.emplace(t.after, found.size());
      found.push_back(t.after);
      reached_by.emplace_back(std::move(t));
    }
  }

  std::vector<std::size_t> order(found.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return found[a] < found[b]; });
  ComponentResult result;
  result.truncated = truncated;
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    result.members.push_back(found[order[rank]]);
    if (reached_by[order[rank]]) result.parent.emplace(rank, *reached_by[order[rank]]);
  }
  return result;
}

std::vector<Transition> tree_path(const ComponentResult& component, const Configuration& target) {
  auto locate = [&](const Configuration& c) {
    auto it = std::lower_bound(component.members.begin(), component.members.end(), c);
    if (it == component.members.end() || !(*it == c)) domain_error("not_in_component", "configuration not reached");
    return static_cast<std::size_t>(it - component.members.begin());
  };
  std::vector<Transition> path;
  for (std::size_t i = locate(target);;) {
    auto it = component.parent.find(i);
    if (it == component.parent.end()) break;
    path.push_back(it->second);
    i = locate(it->second.before);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

namespace {

// Shortest path x -> y in the graph; BFS visits neighbours in increasing order.
std::vector<Site> shortest_sites(const SiteGraph& g, Site x, Site y) {
  std::unordered_map<Site, Site> parent{{x, x}};
  std::deque<Site> queue{x};
  while (!queue.empty() && !parent.count(y)) {
    const Site v = queue.front();
    queue.pop_front();
    for (Site w : g.neighbors(v)) {
      if (parent.emplace(w, v).second) queue.push_back(w);
    }
  }
  if (!parent.count(y)) domain_error("disconnected_sites", "no path between the two sites");
  std::vector<Site> path{y};
  while (path.back() != x) path.push_back(parent.at(path.back()));
  std::reverse(path.begin(), path.end());
  return path;
}

void exchange_adjacent(const Interaction& phi, Configuration& current, Site u, Site v,
                       std::vector<Transition>& out) {
  const StateIndex a = current.at(u), b = current.at(v);
  if (a == b) return;
  for (const PhiEdge& move : pair_exchange_path(phi, a, b)) {
    Transition t = make_transition(phi, current, {u, v}, move);
    current = t.after;
    out.push_back(std::move(t));
  }
}

}  // namespace

std::vector<Transition> swap_path(const Interaction& phi, const Configuration& eta, Site x, Site y) {
  if (!is_exchangeable(phi)) domain_error("not_exchangeable", "interaction is not exchangeable");
  const SiteGraph& g = *eta.graph();
  g.index_of(x);
  g.index_of(y);
  std::vector<Transition> out;
  if (x == y) return out;
  const std::vector<Site> sites = shortest_sites(g, x, y);
  Configuration current = eta;
  const std::size_t n = sites.size() - 1;
  for (std::size_t i = 0; i < n; ++i) exchange_adjacent(phi, current, sites[i], sites[i + 1], out);
  for (std::size_t i = n - 1; i-- > 0;) exchange_adjacent(phi, current, sites[i], sites[i + 1], out);
  return out;
}

void check_permutation(const Permutation& sigma, const SiteGraph& g) {
  std::vector<Site> images;
  for (const auto& [x, y] : sigma) {
    if (!g.contains(x) || !g.contains(y)) input_error("unknown_vertex", "permutation moves a non-vertex");
    images.push_back(y);
  }
  std::sort(images.begin(), images.end());
  std::vector<Site> domain;
  for (const auto& entry : sigma) domain.push_back(entry.first);
  if (images != domain) input_error("not_a_bijection", "sigma is not a bijection of its domain");
}

Configuration permuted(const Configuration& eta, const Permutation& sigma) {
  check_permutation(sigma, *eta.graph());
  Configuration out = eta;
  for (const auto& [x, y] : sigma) out = out.with(x, eta.at(y));
  return out;
}

std::vector<Transition> permutation_path(const Interaction& phi, const Configuration& eta, const Permutation& sigma) {
  check_permutation(sigma, *eta.graph());
  if (!is_exchangeable(phi)) domain_error("not_exchangeable", "interaction is not exchangeable");
  std::vector<Transition> out;
  std::map<Site, bool> visited;
  Configuration current = eta;
  for (const auto& [start, image] : sigma) {
    if (visited[start]) continue;
    std::vector<Site> cycle;
    for (Site c = start; !visited[c]; c = sigma.at(c)) {
      visited[c] = true;
      cycle.push_back(c);
    }
    // After swapping (c_i, c_{i+1}) in turn, site c_i holds the old state of c_{i+1}.
    for (std::size_t i = 0; i + 1 < cycle.size(); ++i) {
      for (Transition& t : swap_path(phi, current, cycle[i], cycle[i + 1])) {
        current = t.after;
        out.push_back(std::move(t));
      }
    }
  }
  return out;
}

Configuration replay(const Interaction& phi, const Configuration& eta, const std::vector<Transition>& path) {
  Configuration current = eta;
  for (const Transition& t : path) {
    if (!(t.before == current)) domain_error("bad_path", "transition does not start where the previous one ended");
    Transition checked = make_transition(phi, current, t.edge, t.phi_edge);
    if (!(checked.after == t.after)) domain_error("bad_path", "transition endpoint is inconsistent");
    current = checked.after;
  }
  return current;
}

InvarianceCheck is_invariant(const UniformFunction& f, const Interaction& phi, const EdgeWindow& window,
                             const std::vector<Configuration>& probes) {
  InvarianceCheck result;
  result.caveat = "exhaustive only over the probe configurations and the edge window";
  for (const Configuration& eta : probes) {
    ++result.probes;
    for (Transition& t : neighbors(phi, eta, window)) {
      ++result.transitions_checked;
      Rational d = difference(f, t.before, t.after);
      if (d != 0) {
        result.invariant = false;
        result.witness = std::move(t);
        result.witness_difference = std::move(d);
        return result;
      }
    }
  }
  return result;
}

std::vector<Configuration> configurations_up_to(const GraphPtr& graph, int num_states, StateIndex base,
                                                const SiteSet& sites, std::size_t max_support,
                                                std::size_t max_count) {
  std::vector<StateIndex> off;
  for (StateIndex s = 0; s < num_states; ++s) {
    if (s != base) off.push_back(s);
  }
  std::vector<Configuration> out;
  std::vector<Configuration::Assignment> chosen;
  std::function<void(std::size_t)> grow = [&](std::size_t from) {
    if (out.size() >= max_count) domain_error("cap_exceeded", "probe set exceeds the configuration cap");
    out.emplace_back(graph, base, chosen);
    if (chosen.size() == max_support) return;
    for (std::size_t i = from; i < sites.size(); ++i) {
      for (StateIndex s : off) {
        chosen.emplace_back(sites[i], s);
        grow(i + 1);
        chosen.pop_back();
      }
    }
  };
  grow(0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace latticecalc
