#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "latticecalc/caps.hpp"
#include "latticecalc/interaction.hpp"
#include "latticecalc/rational.hpp"
#include "latticecalc/site_graph.hpp"

namespace latticecalc {

// Orders site sets by cardinality, then lexicographically.
struct SiteSetOrder {
  bool operator()(const SiteSet& a, const SiteSet& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

/*
 * A function on S^support stored as a dense table.
 *
 * Entry order is the mixed-radix encoding of the state tuple with the first
 * (smallest) site most significant, so tables enumerate S^support in
 * lexicographic order of state indices.
 */
class LocalFunction {
 public:
  LocalFunction(int num_states, SiteSet support, std::vector<Rational> table);

  static LocalFunction zero(int num_states, SiteSet support = {});
  static LocalFunction constant(int num_states, const Rational& value);
  static LocalFunction from_rule(int num_states, SiteSet support,
                                 const std::function<Rational(std::span<const StateIndex>)>& rule);

  int num_states() const { return num_states_; }
  const SiteSet& support() const { return support_; }
  const std::vector<Rational>& table() const { return table_; }

  std::size_t entry_index(std::span<const StateIndex> tuple) const;
  std::vector<StateIndex> tuple_at(std::size_t index) const;
  const Rational& at(std::span<const StateIndex> tuple) const { return table_[entry_index(tuple)]; }

  // Value at a configuration given as a site -> state lookup.
  Rational evaluate(const std::function<StateIndex(Site)>& state_at) const;

  // The same function viewed on a larger support.
  LocalFunction extend_to(const SiteSet& larger) const;

  bool is_zero() const;

  LocalFunction& operator+=(const LocalFunction& other);
  LocalFunction& operator-=(const LocalFunction& other);
  LocalFunction& operator*=(const Rational& scalar);
  friend LocalFunction operator+(LocalFunction a, const LocalFunction& b) { return a += b; }
  friend LocalFunction operator-(LocalFunction a, const LocalFunction& b) { return a -= b; }
  friend LocalFunction operator*(const Rational& s, LocalFunction a) { return a *= s; }

  friend bool operator==(const LocalFunction&, const LocalFunction&) = default;

 private:
  int num_states_;
  SiteSet support_;
  std::vector<Rational> table_;
};

// A local function on S^support that vanishes whenever some coordinate is the
// base state. The constructor enforces the vanishing condition.
class ExactSupportFunction {
 public:
  ExactSupportFunction(LocalFunction f, StateIndex base);

  const LocalFunction& function() const { return f_; }
  const SiteSet& support() const { return f_.support(); }
  StateIndex base() const { return base_; }
  int num_states() const { return f_.num_states(); }
  const Rational& at(std::span<const StateIndex> tuple) const { return f_.at(tuple); }
  bool is_zero() const { return f_.is_zero(); }

  // Value at a configuration; zero unless every support site is off base.
  Rational evaluate(const std::function<StateIndex(Site)>& state_at) const { return f_.evaluate(state_at); }

  friend bool operator==(const ExactSupportFunction&, const ExactSupportFunction&) = default;

 private:
  LocalFunction f_;
  StateIndex base_;
};

using Expansion = std::map<SiteSet, ExactSupportFunction, SiteSetOrder>;

SiteSet normalise_sites(std::vector<Site> sites);
SiteSet intersect(const SiteSet& a, const SiteSet& b);
bool is_subset(const SiteSet& inner, const SiteSet& outer);

// f evaluated with every coordinate outside `sites` forced to `base`; the
// result is supported on sites ∩ support(f).
LocalFunction restrict(const LocalFunction& f, const SiteSet& sites, StateIndex base);

// The unique system of exact-support components summing to f, built by
// induction on |Λ|: f*_Λ = ι^Λ f - Σ_{Λ'' ⊊ Λ} f*_Λ''. Only nonzero
// components are returned; the empty set carries f(⋆).
Expansion expand(const LocalFunction& f, StateIndex base, const Caps& caps = {});

// Pointwise sum of the components as a function on S^sites.
LocalFunction assemble(const Expansion& components, const SiteSet& sites, int num_states);

bool is_exact_support(const LocalFunction& f, StateIndex base);

void check_table_caps(int num_states, std::size_t support_size, const Caps& caps);

}  // namespace latticecalc
