#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "latticecalc/error.hpp"
#include "latticecalc/io.hpp"
#include "latticecalc/linalg.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace latticecalc;
using io::Json;

namespace {

StateIndex idx(const Interaction& phi, const char* label) { return phi.states().index_of(label); }

StatePair pair(const Interaction& phi, const char* a, const char* b) { return {idx(phi, a), idx(phi, b)}; }

std::set<StatePair> members(const Interaction& phi, const PairComponents& c, int id) {
  std::set<StatePair> out;
  for (std::size_t i = 0; i < c.component_id.size(); ++i) {
    if (c.component_id[i] == id) out.insert(phi.pair_at(i));
  }
  return out;
}

std::string error_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

const char* kTwoSpecies = R"({
  "states": ["-1", "0", "1"], "base": "0",
  "edges": [[["1","-1"],["-1","1"]], [["1","-1"],["0","0"]], [["0","0"],["-1","1"]],
            [["-1","0"],["0","-1"]], [["1","0"],["0","1"]]]
})";

}  // namespace

TEST_CASE("loading an exclusion file closes symmetry in lenient mode") {
  Json j = Json::parse(R"({"states":["0","1"],"base":"0","edges":[[["1","0"],["0","1"]]],"symmetry":"lenient"})");
  const Interaction phi = io::interaction_from_json(j);
  CHECK(phi.edges().size() == 2);
  CHECK(phi == builtin_interaction("exclusion"));

  j["symmetry"] = "strict";
  CHECK(error_code([&] { io::interaction_from_json(j); }) == "asymmetric");
}

TEST_CASE("the two-species file with annihilation and creation has ten directed edges") {
  const Interaction phi = io::interaction_from_json(Json::parse(kTwoSpecies));
  CHECK(phi.edges().size() == 10);
  CHECK(phi == builtin_interaction("two-species-ac"));
}

TEST_CASE("load errors") {
  CHECK(error_code([] { io::interaction_from_json(Json::parse(R"({"states":["0","0"],"edges":[]})")); }) ==
        "duplicate_state");
  CHECK(error_code([] {
          io::interaction_from_json(Json::parse(R"({"states":["0","1"],"edges":[[["0","2"],["1","1"]]]})"));
        }) == "unknown_state");
  CHECK(error_code([] { builtin_interaction("nonsense"); }) == "unknown_interaction");
}

TEST_CASE("pair components of the exclusion interaction") {
  const Interaction phi = builtin_interaction("exclusion");
  const PairComponents c = pair_components(phi);
  CHECK(c.count == 3);
  CHECK(members(phi, c, 0) == std::set<StatePair>{{0, 0}});
  CHECK(members(phi, c, 1) == std::set<StatePair>{{0, 1}, {1, 0}});
  CHECK(members(phi, c, 2) == std::set<StatePair>{{1, 1}});
}

TEST_CASE("empty interaction: four singleton components, not exchangeable") {
  const Interaction phi(StateSpace({"0", "1"}, 0), {}, SymmetryMode::strict);
  CHECK(pair_components(phi).count == 4);
  CHECK_FALSE(is_exchangeable(phi));
}

TEST_CASE("pair components of the two-species interaction") {
  const Interaction phi = builtin_interaction("two-species-ac");
  const PairComponents c = pair_components(phi);
  CHECK(c.count == 5);
  std::set<std::set<StatePair>> comps;
  for (int i = 0; i < c.count; ++i) comps.insert(members(phi, c, i));
  const std::set<std::set<StatePair>> expected{
      {pair(phi, "0", "0"), pair(phi, "1", "-1"), pair(phi, "-1", "1")},
      {pair(phi, "-1", "0"), pair(phi, "0", "-1")},
      {pair(phi, "1", "0"), pair(phi, "0", "1")},
      {pair(phi, "-1", "-1")},
      {pair(phi, "1", "1")}};
  CHECK(comps == expected);
}

TEST_CASE("exchangeability of the built-ins") {
  CHECK(is_exchangeable(builtin_interaction("exclusion")));
  for (int kappa = 1; kappa <= 4; ++kappa) {
    CHECK(is_exchangeable(builtin_interaction("multispecies:" + std::to_string(kappa))));
  }
  CHECK(is_exchangeable(builtin_interaction("two-species-ac")));
  CHECK_FALSE(is_exchangeable(builtin_interaction("quastel2")));
}

TEST_CASE("conserved quantities of the built-ins") {
  const auto ex = consv_basis(builtin_interaction("exclusion"), 0);
  REQUIRE(ex.size() == 1);
  CHECK(ex[0].values == std::vector<Rational>{0, 1});

  for (int kappa = 1; kappa <= 3; ++kappa) {
    const auto basis = consv_basis(builtin_interaction("multispecies:" + std::to_string(kappa)), 0);
    REQUIRE(basis.size() == static_cast<std::size_t>(kappa));
    for (int i = 1; i <= kappa; ++i) {
      for (int j = 0; j <= kappa; ++j) CHECK(basis[i - 1].values[j] == (i == j ? 1 : 0));
    }
  }

  const Interaction two = builtin_interaction("two-species-ac");
  const auto ac = consv_basis(two, idx(two, "0"));
  REQUIRE(ac.size() == 1);
  CHECK(ac[0].values == std::vector<Rational>{-1, 0, 1});
}

TEST_CASE("pair exchange paths") {
  const Interaction ex = builtin_interaction("exclusion");
  const auto p = pair_exchange_path(ex, 1, 0);
  REQUIRE(p.size() == 1);
  CHECK(p[0].from == StatePair{1, 0});
  CHECK(p[0].to == StatePair{0, 1});
  CHECK(pair_exchange_path(ex, 1, 1).empty());

  const Interaction two = builtin_interaction("two-species-ac");
  const auto q = pair_exchange_path(two, idx(two, "1"), idx(two, "-1"));
  REQUIRE(q.size() == 1);
  CHECK(q[0].to == pair(two, "-1", "1"));

  const Interaction quastel = builtin_interaction("quastel2");
  CHECK(error_code([&] { pair_exchange_path(quastel, 1, 2); }) == "not_exchangeable");
}

TEST_CASE("property: serialisation roundtrip and idempotent symmetry closure") {
  gen::Rng rng(21);
  std::vector<Interaction> cases = gen::exchangeable_builtins();
  cases.push_back(builtin_interaction("quastel2"));
  for (int i = 0; i < 30; ++i) cases.push_back(gen::random_interaction(rng, gen::uniform_int(rng, 1, 3), 0.2));
  for (const auto& phi : cases) {
    const Json j = io::interaction_to_json(phi);
    CHECK(io::interaction_from_json(j) == phi);
    Json lenient = j;
    lenient["symmetry"] = "lenient";
    CHECK(io::interaction_from_json(lenient) == phi);
    CHECK(io::interaction_to_json(io::interaction_from_json(j)).dump() == j.dump());
  }
}

TEST_CASE("property: components, exchangeability and paths agree with the BFS oracle") {
  gen::Rng rng(3);
  int exchangeable_seen = 0, other_seen = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Interaction phi = gen::random_interaction(rng, gen::uniform_int(rng, 1, 4), 0.15);
    const auto comps = oracle::pair_component_sets(phi);
    const PairComponents c = pair_components(phi);
    CHECK(c.count == static_cast<int>(comps.size()));
    for (const auto& comp : comps) {
      const int id = c.component_id[phi.pair_index(*comp.begin())];
      for (const auto& p : comp) CHECK(c.component_id[phi.pair_index(p)] == id);
    }
    const bool ex = oracle::exchangeable(phi);
    CHECK(is_exchangeable(phi) == ex);
    (ex ? exchangeable_seen : other_seen)++;
    bool all_paths = true;
    for (int a = 0; a < phi.num_states(); ++a) {
      for (int b = 0; b < phi.num_states(); ++b) {
        try {
          StatePair at{a, b};
          for (const auto& e : pair_exchange_path(phi, a, b)) {
            CHECK(e.from == at);
            const auto& next = phi.neighbors(at);
            CHECK(std::binary_search(next.begin(), next.end(), e.to));
            at = e.to;
          }
          CHECK(at == StatePair{b, a});
        } catch (const Error& e) {
          CHECK(e.code() == "not_exchangeable");
          all_paths = false;
        }
      }
    }
    CHECK(all_paths == ex);
  }
  CHECK(exchangeable_seen > 0);
  CHECK(other_seen > 0);
}

TEST_CASE("property: basis vectors are conserved and normalised; dimension is base independent") {
  gen::Rng rng(8);
  std::vector<Interaction> cases = gen::exchangeable_builtins();
  cases.push_back(builtin_interaction("quastel2"));
  for (int i = 0; i < 60; ++i) cases.push_back(gen::random_interaction(rng, gen::uniform_int(rng, 2, 4), 0.2));
  for (const auto& phi : cases) {
    const int q = phi.num_states();
    std::vector<std::vector<ConservedQuantity>> bases;
    for (StateIndex base = 0; base < q; ++base) {
      auto b = consv_basis(phi, base);
      for (const auto& xi : b) {
        CHECK(xi.values[base] == 0);
        for (const auto& e : phi.edges()) {
          CHECK(xi.values[e.from.first] + xi.values[e.from.second] == xi.values[e.to.first] + xi.values[e.to.second]);
        }
      }
      bases.push_back(std::move(b));
    }
    // Same space modulo constants: span(B ∪ {1}) is independent of the base.
    auto with_ones = [&](const std::vector<ConservedQuantity>& b) {
      std::vector<std::vector<Rational>> m{std::vector<Rational>(static_cast<std::size_t>(q), Rational(1))};
      for (const auto& xi : b) m.push_back(xi.values);
      return m;
    };
    const auto reference = with_ones(bases[0]);
    for (const auto& b : bases) {
      CHECK(b.size() == bases[0].size());
      auto joint = reference;
      for (const auto& xi : b) joint.push_back(xi.values);
      CHECK(oracle::rank(joint) == oracle::rank(reference));
      CHECK(oracle::rank(with_ones(b)) == oracle::rank(reference));
    }
  }
}
