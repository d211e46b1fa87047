#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "latticecalc/caps.hpp"
#include "latticecalc/interaction.hpp"
#include "latticecalc/site_graph.hpp"
#include "latticecalc/transition_system.hpp"
#include "latticecalc/uniform_function.hpp"

namespace latticecalc {

// Cochain dimensions of (S^X, Φ_E) for a finite graph X. h0 is computed
// twice: by counting connected components and as dim ker ∂.
struct CochainSpaceSummary {
  std::size_t dim_c0 = 0;
  std::size_t dim_c1 = 0;  // unordered pairs {η, η'} joined by a transition
  std::size_t rank_d = 0;
  std::size_t h0 = 0;
  std::size_t h1 = 0;
  std::size_t h0_components = 0;
  std::size_t h0_kernel = 0;
};

CochainSpaceSummary h0_h1_finite(const Interaction& phi, const SiteGraph& g, const Caps& caps = {});

enum class ViolationKind { unequal_single_site, nonzero_multi_site, not_conserved_pair, not_invariant };

std::string to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string message;
  SiteSet sites;                    // offending support(s)
  std::optional<PhiEdge> phi_edge;  // for not_conserved_pair
};

struct ExtractionResult {
  std::optional<ConservedQuantity> conserved;
  std::optional<Violation> violation;

  bool ok() const { return conserved.has_value(); }
};

// Decides whether f = ξ_X for a conserved quantity ξ; f must have f*_∅ = 0.
ExtractionResult extract_conserved(const UniformFunction& f, const Interaction& phi);

struct KernelOptions {
  std::optional<std::size_t> probe_bound;           // default R + 3
  std::optional<std::size_t> exchange_probe_bound;  // default probe_bound
  bool exchange_constraints = true;                 // only used when φ is exchangeable
  bool verify = true;
  Caps caps;
};

struct KernelResult {
  Site a = 0;
  Site b = 0;
  int radius = 0;
  int range = 1;
  std::size_t probe_bound = 0;
  std::size_t unknowns = 0;
  std::size_t constraint_rank = 0;
  std::size_t full_nullity = 0;  // before projecting onto the inner window
  std::size_t dimension = 0;
  std::vector<UniformFunction> basis;
  std::optional<bool> verified;
};

/*
 * Invariant uniform functions of radius R on the window [a, b] of (Z, E_k).
 *
 * Unknowns are the off-base table entries of every component f*_Λ with
 * Λ ⊆ [a, b], Λ nonempty and diam Λ <= R. Each probe configuration (support
 * in the window, at most p off-base sites) contributes one equation
 * f(η') - f(η) = 0 per transition fired on an edge inside [a+R, b-R]; for
 * exchangeable φ the exchanges η -> η^{x,y} with x, y in that zone are added
 * as well. Components near the boundary stay unconstrained, so the
 * nullspace is projected onto components inside [a+R, b-R] and the
 * dimension of that projection is reported.
 */
KernelResult invariance_kernel(const Interaction& phi, int radius, int k, Site a, Site b, StateIndex base,
                               const KernelOptions& options = {});

}  // namespace latticecalc
