#pragma once

// Reference computations for the tests. Each one is written from the
// definitions with no shortcuts and shares no code with the library beyond
// the value types, so agreement is meaningful.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <vector>

#include "latticecalc/interaction.hpp"
#include "latticecalc/local_function.hpp"
#include "latticecalc/rational.hpp"
#include "latticecalc/site_graph.hpp"
#include "latticecalc/uniform_function.hpp"

namespace oracle {

using namespace latticecalc;

// Dense Gaussian elimination over Q with the first nonzero pivot.
inline std::size_t rank(std::vector<std::vector<Rational>> m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational factor = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= factor * m[r][j];
    }
    ++r;
  }
  return r;
}

// Components of (S x S, φ) by BFS over the raw edge list.
inline std::vector<std::set<StatePair>> pair_component_sets(const Interaction& phi) {
  const int q = phi.num_states();
  std::map<StatePair, std::vector<StatePair>> adj;
  for (const auto& e : phi.edges()) adj[e.from].push_back(e.to);
  std::set<StatePair> seen;
  std::vector<std::set<StatePair>> out;
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      const StatePair start{a, b};
      if (seen.count(start)) continue;
      std::set<StatePair> comp{start};
      std::deque<StatePair> queue{start};
      seen.insert(start);
      while (!queue.empty()) {
        const StatePair v = queue.front();
        queue.pop_front();
        for (const auto& w : adj[v]) {
          if (seen.insert(w).second) {
            comp.insert(w);
            queue.push_back(w);
          }
        }
      }
      out.push_back(std::move(comp));
    }
  }
  return out;
}

inline bool exchangeable(const Interaction& phi) {
  for (const auto& comp : pair_component_sets(phi)) {
    for (const auto& p : comp) {
      if (!comp.count(p.swapped())) return false;
    }
  }
  return true;
}

// f*_Λ(τ) = Σ_{Λ'' ⊆ Λ} (-1)^{|Λ \ Λ''|} f(τ on Λ'', base elsewhere), for
// τ ∈ S^Λ; the result is a dense table on Λ.
inline LocalFunction mobius_component(const LocalFunction& f, StateIndex base, const SiteSet& lambda) {
  const SiteSet& supp = f.support();
  std::vector<std::size_t> pos;
  for (Site s : lambda) pos.push_back(static_cast<std::size_t>(std::find(supp.begin(), supp.end(), s) - supp.begin()));
  LocalFunction out = LocalFunction::zero(f.num_states(), lambda);
  std::vector<Rational> table = out.table();
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto tau = out.tuple_at(i);
    Rational sum = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << lambda.size()); ++mask) {
      std::vector<StateIndex> full(supp.size(), base);
      int dropped = 0;
      for (std::size_t j = 0; j < lambda.size(); ++j) {
        if (mask & (std::uint64_t{1} << j)) full[pos[j]] = tau[j];
        else ++dropped;
      }
      sum += (dropped % 2 ? -1 : 1) * f.at(full);
    }
    table[i] = sum;
  }
  return LocalFunction(f.num_states(), lambda, std::move(table));
}

inline int lattice_distance(Site i, Site j, int k) {
  const Site d = i > j ? i - j : j - i;
  return static_cast<int>((d + k - 1) / k);
}

// Σ over all placed components evaluated at eta; relies only on the
// exact-support property to discard components off the support.
inline Rational evaluate(const UniformFunction& f, const Configuration& eta) {
  const UniformFunction g = f.materialize();
  Rational total = g.constant();
  for (const auto& [lambda, component] : g.components()) {
    std::vector<StateIndex> tuple;
    for (Site x : lambda) tuple.push_back(eta.at(x));
    total += component.at(tuple);
  }
  return total;
}

// Σ_x ξ(η_x) over the support.
inline Rational xi_sum(const ConservedQuantity& xi, const Configuration& eta) {
  Rational total = 0;
  for (const auto& [x, s] : eta.assignments()) total += xi.values[static_cast<std::size_t>(s)];
  return total;
}

}  // namespace oracle
