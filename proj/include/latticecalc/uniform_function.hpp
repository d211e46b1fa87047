#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "latticecalc/caps.hpp"
#include "latticecalc/interaction.hpp"
#include "latticecalc/local_function.hpp"
#include "latticecalc/rational.hpp"
#include "latticecalc/site_graph.hpp"

namespace latticecalc {

// A configuration that differs from the base state at finitely many sites.
class Configuration {
 public:
  using Assignment = std::pair<Site, StateIndex>;

  // Entries equal to the base state are dropped; sites must be vertices.
  Configuration(GraphPtr graph, StateIndex base, std::vector<Assignment> assignments);
  static Configuration ground(GraphPtr graph, StateIndex base) { return {std::move(graph), base, {}}; }

  const GraphPtr& graph() const { return graph_; }
  StateIndex base() const { return base_; }
  const std::vector<Assignment>& assignments() const { return assignments_; }

  // State at any site; sites outside the graph are at the base state.
  StateIndex at(Site x) const;
  SiteSet support() const;
  std::size_t support_size() const { return assignments_.size(); }

  Configuration with(Site x, StateIndex s) const;
  Configuration swapped(Site x, Site y) const;

  std::size_t hash() const;

  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.base_ == b.base_ && a.assignments_ == b.assignments_ && same_graph(a.graph_, b.graph_);
  }
  // Canonical order: by base, then by the sorted assignment list.
  friend bool operator<(const Configuration& a, const Configuration& b) {
    if (a.base_ != b.base_) return a.base_ < b.base_;
    return a.assignments_ < b.assignments_;
  }

 private:
  GraphPtr graph_;
  StateIndex base_;
  std::vector<Assignment> assignments_;  // sorted by site, no base entries
};

struct ConfigurationHash {
  std::size_t operator()(const Configuration& c) const { return c.hash(); }
};

// Sites where the two configurations differ.
SiteSet difference_set(const Configuration& a, const Configuration& b);

enum class FamilyKind { explicit_family, translated };

/*
 * A uniform function, kept as its exact-support expansion at a base state.
 *
 * Explicit families list finitely many components f*_Λ. Translated families
 * (lattice windows of Z only) list templates Λ₀ with min(Λ₀) = 0 standing for
 * every integer translate Λ₀ + t in Z; configurations still live in the
 * window. The constant f*_∅ is carried separately and every nonempty
 * component has diam(Λ) <= radius.
 */
class UniformFunction {
 public:
  static UniformFunction make_explicit(GraphPtr graph, int num_states, StateIndex base, int radius,
                                       const Expansion& components, Rational constant = 0);
  static UniformFunction make_translated(GraphPtr graph, int num_states, StateIndex base, int radius,
                                         const Expansion& templates, Rational constant = 0);
  static UniformFunction zero(GraphPtr graph, int num_states, StateIndex base);

  FamilyKind kind() const { return kind_; }
  const GraphPtr& graph() const { return graph_; }
  int num_states() const { return num_states_; }
  StateIndex base() const { return base_; }
  int radius() const { return radius_; }
  const Rational& constant() const { return constant_; }

  // Explicit components, or templates for a translated family. Never
  // contains the empty set.
  const Expansion& components() const { return components_; }

  // Calls visit(shift, component) for every placed component Λ + shift
  // meeting `sites`, each exactly once, in a deterministic order.
  void for_each_touching(const SiteSet& sites,
                         const std::function<void(Site, const ExactSupportFunction&)>& visit) const;

  // Explicit family on the graph; translates are truncated to the window.
  UniformFunction materialize() const;

  int diameter_of(const SiteSet& sites) const;

  // Same kind, base, constant and components (radius bound not compared).
  bool same_family(const UniformFunction& other) const;

 private:
  UniformFunction() = default;
  void insert_checked(const SiteSet& sites, const ExactSupportFunction& component);

  FamilyKind kind_ = FamilyKind::explicit_family;
  GraphPtr graph_;
  int num_states_ = 0;
  StateIndex base_ = 0;
  int radius_ = 0;
  Rational constant_ = 0;
  Expansion components_;
};

Rational evaluate(const UniformFunction& f, const Configuration& eta);

// f(eta') - f(eta), summed over components meeting the sites where eta and
// eta' differ; well defined for translated families on Z.
Rational difference(const UniformFunction& f, const Configuration& eta, const Configuration& eta_prime);

using LocalSystem = std::map<Site, LocalFunction>;

// Σ_x f_x for a system with each f_x supported in ball(x, R) and f_x(⋆) = 0.
UniformFunction sum_of_uniformly_local(const LocalSystem& system, int radius, GraphPtr graph, int num_states,
                                       StateIndex base, const Caps& caps = {});

// f_x = Σ_{Λ ∋ x} f*_Λ / |Λ| for every vertex x of the graph.
LocalSystem to_uniformly_local(const UniformFunction& f);

UniformFunction rebase(const UniformFunction& f, StateIndex new_base, const Caps& caps = {});

// ξ_X = Σ_x ξ_x: translated on lattice windows of Z, explicit otherwise.
UniformFunction xi_X(const ConservedQuantity& xi, GraphPtr graph, StateIndex base);

}  // namespace latticecalc
