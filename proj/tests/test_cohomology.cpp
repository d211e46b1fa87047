#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "latticecalc/cohomology.hpp"
#include "latticecalc/error.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace latticecalc;

namespace {

std::string error_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

Interaction complete_interaction() {
  std::vector<PhiEdge> edges;
  const std::vector<StatePair> all{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  for (const auto& u : all) {
    for (const auto& v : all) {
      if (u != v) edges.push_back({u, v});
    }
  }
  return Interaction(StateSpace({"0", "1"}, 0), edges, SymmetryMode::strict);
}

// Oracle for the finite cochain complex: configurations of a path are
// integers in base q; components by repeated relabelling and rank of ∂ by
// dense elimination.
struct FiniteOracle {
  std::size_t c0 = 0, c1 = 0, components = 0, rank = 0;
};

FiniteOracle finite_oracle(const Interaction& phi, int n) {
  const int q = phi.num_states();
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<std::size_t>(q);
  auto digit = [&](std::size_t c, int i) {
    for (int j = 0; j < i; ++j) c /= static_cast<std::size_t>(q);
    return static_cast<int>(c % static_cast<std::size_t>(q));
  };
  auto set_digit = [&](std::size_t c, int i, int s) {
    std::size_t place = 1;
    for (int j = 0; j < i; ++j) place *= static_cast<std::size_t>(q);
    return c - place * static_cast<std::size_t>(digit(c, i)) + place * static_cast<std::size_t>(s);
  };
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t c = 0; c < total; ++c) {
    for (int i = 0; i + 1 < n; ++i) {
      for (const auto& [lo, hi] : std::vector<std::pair<int, int>>{{i, i + 1}, {i + 1, i}}) {
        for (const auto& e : phi.edges()) {
          if (e.from != StatePair{digit(c, lo), digit(c, hi)}) continue;
          const std::size_t d = set_digit(set_digit(c, lo, e.to.first), hi, e.to.second);
          if (d != c) pairs.insert({std::min(c, d), std::max(c, d)});
        }
      }
    }
  }
  std::vector<std::size_t> label(total);
  std::iota(label.begin(), label.end(), 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [u, v] : pairs) {
      const std::size_t m = std::min(label[u], label[v]);
      if (label[u] != m || label[v] != m) {
        label[u] = label[v] = m;
        changed = true;
      }
    }
  }
  FiniteOracle out;
  out.c0 = total;
  out.c1 = pairs.size();
  out.components = std::set<std::size_t>(label.begin(), label.end()).size();
  std::vector<std::vector<Rational>> d;
  for (const auto& [u, v] : pairs) {
    std::vector<Rational> row(total, Rational(0));
    row[u] = -1;
    row[v] = 1;
    d.push_back(std::move(row));
  }
  out.rank = oracle::rank(std::move(d));
  return out;
}

UniformFunction six_components(const GraphPtr& g) {
  LocalSystem system;
  for (Site x = 0; x <= 5; ++x) {
    system.emplace(x, LocalFunction::from_rule(2, {x, x + 1}, [](auto t) { return Rational(t[0] * t[1]); }));
  }
  return sum_of_uniformly_local(system, 2, g, 2, 0);
}

}  // namespace

TEST_CASE("finite cohomology") {
  const Interaction ex = builtin_interaction("exclusion");
  const auto s2 = h0_h1_finite(ex, SiteGraph::path(2));
  CHECK(s2.dim_c0 == 4);
  CHECK(s2.h0 == 3);
  CHECK(s2.dim_c1 == 1);
  CHECK(s2.rank_d == 1);
  CHECK(s2.h1 == 0);

  const Interaction none(StateSpace({"0", "1", "2"}, 0), {}, SymmetryMode::strict);
  const auto empty = h0_h1_finite(none, SiteGraph::path(3));
  CHECK(empty.h0 == 27);
  CHECK(empty.h1 == 0);

  // two-species-ac on one edge: the triangle (1,-1), (0,0), (-1,1) gives one
  // independent cycle.
  const auto two = h0_h1_finite(builtin_interaction("two-species-ac"), SiteGraph::path(2));
  CHECK(two.dim_c0 == 9);
  CHECK(two.h0 == 5);
  CHECK(two.dim_c1 == 5);
  CHECK(two.rank_d == 4);
  CHECK(two.h1 == 1);

  for (int n = 2; n <= 6; ++n) CHECK(h0_h1_finite(ex, SiteGraph::path(n)).h0 == static_cast<std::size_t>(n + 1));

  Caps tight;
  tight.max_configurations = 100;
  CHECK(error_code([&] { h0_h1_finite(ex, SiteGraph::path(7), tight); }) == "cap_exceeded");
}

TEST_CASE("extraction of conserved quantities") {
  const Interaction ex = builtin_interaction("exclusion");
  const GraphPtr z = share(SiteGraph::lattice_z(1, -5, 5));
  const auto ok = extract_conserved(xi_X(ConservedQuantity{{0, 1}}, z, 0), ex);
  REQUIRE(ok.ok());
  CHECK(ok.conserved->values == std::vector<Rational>{0, 1});

  const GraphPtr p2 = share(SiteGraph::path(2));
  Expansion unequal;
  unequal.emplace(SiteSet{0}, ExactSupportFunction(LocalFunction(2, {0}, {0, 1}), 0));
  unequal.emplace(SiteSet{1}, ExactSupportFunction(LocalFunction(2, {1}, {0, 2}), 0));
  const auto u = extract_conserved(UniformFunction::make_explicit(p2, 2, 0, 0, unequal), ex);
  REQUIRE(u.violation.has_value());
  CHECK(u.violation->kind == ViolationKind::unequal_single_site);
  CHECK(u.violation->sites == SiteSet{0, 1});
  CHECK(to_string(u.violation->kind) == "UnequalSingleSite");

  const auto m = extract_conserved(six_components(share(SiteGraph::lattice_z(1, 0, 6))), ex);
  REQUIRE(m.violation.has_value());
  CHECK(m.violation->kind == ViolationKind::nonzero_multi_site);
  CHECK(m.violation->sites == SiteSet{0, 1});

  // Counting all particles is not conserved once pairs are created.
  const Interaction two = builtin_interaction("two-species-ac");
  ConservedQuantity count{{1, 0, 1}};
  const auto c = extract_conserved(xi_X(count, z, two.states().index_of("0")), two);
  REQUIRE(c.violation.has_value());
  CHECK(c.violation->kind == ViolationKind::not_conserved_pair);
  REQUIRE(c.violation->phi_edge.has_value());

  const UniformFunction lifted = UniformFunction::make_explicit(p2, 2, 0, 0, {}, 1);
  CHECK(error_code([&] { extract_conserved(lifted, ex); }) == "normalization_violation");
  CHECK(error_code([&] { extract_conserved(xi_X(count, z, 1), ex); }) == "state_space_mismatch");
}

TEST_CASE("invariance kernel") {
  const auto ex = invariance_kernel(builtin_interaction("exclusion"), 1, 1, 0, 7, 0);
  CHECK(ex.dimension == 1);
  CHECK(ex.verified == std::optional<bool>(true));
  REQUIRE(ex.basis.size() == 1);
  // The basis vector is ξ_X on the constrained zone [1, 6].
  const auto& comps = ex.basis[0].components();
  CHECK(comps.size() == 6);
  for (Site x = 1; x <= 6; ++x) {
    REQUIRE(comps.count({x}));
    CHECK(comps.at({x}).function().table() == std::vector<Rational>{0, 1});
  }

  CHECK(invariance_kernel(builtin_interaction("multispecies:2"), 1, 1, 0, 7, 0).dimension == 2);
  CHECK(invariance_kernel(complete_interaction(), 1, 1, 0, 7, 0).dimension == 0);

  CHECK(error_code([] { invariance_kernel(builtin_interaction("exclusion"), 1, 1, 0, 6, 0); }) == "window_too_small");
  KernelOptions small;
  small.caps.max_kernel_unknowns = 10;
  CHECK(error_code([&] { invariance_kernel(builtin_interaction("exclusion"), 1, 1, 0, 7, 0, small); }) ==
        "cap_exceeded");
}

TEST_CASE("property: both h0 computations agree with the oracle on random interactions") {
  gen::Rng rng(61);
  for (int trial = 0; trial < 40; ++trial) {
    const int q = gen::uniform_int(rng, 1, 3);
    const Interaction phi = gen::random_interaction(rng, q, 0.25);
    const int n = gen::uniform_int(rng, 2, q == 3 ? 4 : 5);
    const auto s = h0_h1_finite(phi, SiteGraph::path(n));
    const FiniteOracle o = finite_oracle(phi, n);
    CHECK(s.dim_c0 == o.c0);
    CHECK(s.dim_c1 == o.c1);
    CHECK(s.h0_components == o.components);
    CHECK(s.h0_kernel == o.c0 - o.rank);
    CHECK(s.h0 == o.components);
    CHECK(s.rank_d == o.rank);
    CHECK(s.h1 == o.c1 - o.rank);
  }
}

TEST_CASE("property: extraction is sound and complete") {
  gen::Rng rng(71);
  const GraphPtr z = share(SiteGraph::lattice_z(1, -5, 5));
  const GraphPtr p = share(SiteGraph::path(5));
  std::vector<Interaction> interactions = gen::exchangeable_builtins();
  interactions.push_back(builtin_interaction("quastel2"));
  for (const auto& phi : interactions) {
    const int q = phi.num_states();
    for (StateIndex base = 0; base < q; ++base) {
      const auto basis = consv_basis(phi, base);
      for (const GraphPtr& g : {z, p}) {
        for (const auto& xi : basis) {
          const auto r = extract_conserved(xi_X(xi, g, base), phi);
          REQUIRE(r.ok());
          CHECK(r.conserved->values == xi.values);
        }
        for (int i = 0; i < 5; ++i) {
          std::vector<Rational> mix(static_cast<std::size_t>(q), Rational(0));
          for (const auto& xi : basis) {
            const Rational c = gen::rational(rng);
            for (int s = 0; s < q; ++s) mix[static_cast<std::size_t>(s)] += c * xi.values[static_cast<std::size_t>(s)];
          }
          const auto r = extract_conserved(xi_X(ConservedQuantity{mix}, g, base), phi);
          REQUIRE(r.ok());
          CHECK(r.conserved->values == mix);
        }
      }
    }
  }

  // Random families: any Conserved outcome must check out independently.
  int conserved = 0, violations = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Interaction& phi = interactions[static_cast<std::size_t>(trial) % interactions.size()];
    const int q = phi.num_states();
    const StateIndex base = gen::uniform_int(rng, 0, q - 1);
    UniformFunction f = UniformFunction::zero(z, q, base);
    const int shape = trial % 3;
    if (shape == 0) {
      f = gen::translated_function(rng, z, q, base, gen::uniform_int(rng, 0, 1), 2);
    } else if (shape == 1) {
      Expansion one;
      one.emplace(SiteSet{0}, gen::exact_component(rng, q, base, {0}));
      f = UniformFunction::make_translated(z, q, base, 0, one);
    } else {
      f = gen::explicit_function(rng, z, q, base, 0, 3);
    }
    // Drop the random constant: extraction needs f*_∅ = 0.
    f = f.kind() == FamilyKind::translated ? UniformFunction::make_translated(z, q, base, f.radius(), f.components())
                                           : UniformFunction::make_explicit(z, q, base, f.radius(), f.components());
    const auto r = extract_conserved(f, phi);
    if (!r.ok()) {
      ++violations;
      continue;
    }
    ++conserved;
    for (const auto& e : phi.edges()) {
      const auto& v = r.conserved->values;
      CHECK(v[e.from.first] + v[e.from.second] == v[e.to.first] + v[e.to.second]);
    }
    CHECK(xi_X(*r.conserved, z, base).materialize().components() == f.materialize().components());
  }
  CHECK(conserved > 0);
  CHECK(violations > 0);
}

TEST_CASE("property: kernel basis vectors are invariant; dimension is monotone in p and window length") {
  const Interaction ex = builtin_interaction("exclusion");
  std::size_t previous = SIZE_MAX;
  for (Site length : {8, 10, 12}) {
    const auto r = invariance_kernel(ex, 1, 1, 0, length - 1, 0);
    CHECK(r.dimension <= previous);
    previous = r.dimension;

    // Re-verify each basis vector with probes and edges chosen here.
    const GraphPtr g = r.basis.front().graph();
    SiteSet sites;
    for (Site x = 0; x < length; ++x) sites.push_back(x);
    const auto probes = configurations_up_to(g, 2, 0, sites, 4, 100000);
    for (const auto& f : r.basis) {
      CHECK(is_invariant(f, ex, edge_window_between(*g, 2, length - 3), probes).invariant);
    }
  }

  std::size_t by_p = SIZE_MAX;
  for (std::size_t p = 1; p <= 5; ++p) {
    KernelOptions o;
    o.probe_bound = p;
    const auto r = invariance_kernel(ex, 1, 1, 0, 9, 0, o);
    CHECK(r.dimension <= by_p);
    by_p = r.dimension;
  }
  CHECK(by_p == 1);

  KernelOptions plain;
  plain.exchange_constraints = false;
  CHECK(invariance_kernel(ex, 1, 1, 0, 9, 0, plain).dimension == 1);
}
