#include "latticecalc/uniform_function.hpp"

#include <algorithm>
#include <set>

#include "latticecalc/error.hpp"

namespace latticecalc {
namespace {

ExactSupportFunction shifted(const ExactSupportFunction& f, Site shift) {
  if (shift == 0) return f;
  SiteSet sites = f.support();
  for (Site& s : sites) s += shift;
  return ExactSupportFunction(LocalFunction(f.num_states(), std::move(sites), f.function().table()), f.base());
}

bool meets(const SiteSet& a, const SiteSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i;
    else ++j;
  }
  return false;
}

Rational evaluate_at(const ExactSupportFunction& f, Site shift, const Configuration& eta) {
  return f.evaluate([&](Site x) { return eta.at(x + shift); });
}

void check_graph(const GraphPtr& a, const GraphPtr& b) {
  if (!same_graph(a, b)) domain_error("graph_mismatch", "function and configuration live on different graphs");
}

}  // namespace

Configuration::Configuration(GraphPtr graph, StateIndex base, std::vector<Assignment> assignments)
    : graph_(std::move(graph)), base_(base) {
  if (!graph_) input_error("bad_configuration", "configuration needs a graph");
  std::sort(assignments.begin(), assignments.end());
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    const auto& [x, s] = assignments[i];
    if (!graph_->contains(x)) input_error("unknown_vertex", "site " + std::to_string(x) + " is not a vertex");
    if (i > 0 && assignments[i - 1].first == x) input_error("bad_configuration", "site assigned twice");
    if (s < 0) input_error("unknown_state", "negative state index");
    if (s != base_) assignments_.push_back(assignments[i]);
  }
}

StateIndex Configuration::at(Site x) const {
  auto it = std::lower_bound(assignments_.begin(), assignments_.end(), x,
                             [](const Assignment& a, Site s) { return a.first < s; });
  if (it != assignments_.end() && it->first == x) return it->second;
  return base_;
}

SiteSet Configuration::support() const {
  SiteSet out;
  out.reserve(assignments_.size());
  for (const auto& a : assignments_) out.push_back(a.first);
  return out;
}

Configuration Configuration::with(Site x, StateIndex s) const {
  if (!graph_->contains(x)) input_error("unknown_vertex", "site " + std::to_string(x) + " is not a vertex");
  Configuration out = *this;
  auto it = std::lower_bound(out.assignments_.begin(), out.assignments_.end(), x,
                             [](const Assignment& a, Site site) { return a.first < site; });
  const bool present = it != out.assignments_.end() && it->first == x;
  if (s == base_) {
    if (present) out.assignments_.erase(it);
  } else if (present) {
    it->second = s;
  } else {
    out.assignments_.insert(it, {x, s});
  }
  return out;
}

Configuration Configuration::swapped(Site x, Site y) const {
  const StateIndex sx = at(x), sy = at(y);
  return with(x, sy).with(y, sx);
}

std::size_t Configuration::hash() const {
  std::size_t h = std::hash<int>{}(base_) * 0x9e3779b97f4a7c15ULL;
  for (const auto& [x, s] : assignments_) {
    h ^= std::hash<Site>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<int>{}(s) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

SiteSet difference_set(const Configuration& a, const Configuration& b) {
  SiteSet candidates = a.support();
  for (Site x : b.support()) candidates.push_back(x);
  candidates = normalise_sites(std::move(candidates));
  SiteSet out;
  for (Site x : candidates) {
    if (a.at(x) != b.at(x)) out.push_back(x);
  }
  return out;
}

UniformFunction UniformFunction::make_explicit(GraphPtr graph, int num_states, StateIndex base, int radius,
                                               const Expansion& components, Rational constant) {
  if (!graph) input_error("bad_function", "uniform function needs a graph");
  if (radius < 0) input_error("bad_function", "radius must be nonnegative");
  UniformFunction f;
  f.kind_ = FamilyKind::explicit_family;
  f.graph_ = std::move(graph);
  f.num_states_ = num_states;
  f.base_ = base;
  f.radius_ = radius;
  f.constant_ = std::move(constant);
  for (const auto& [sites, component] : components) {
    if (sites.empty()) {
      f.constant_ += component.function().table().front();
      continue;
    }
    for (Site x : sites) {
      if (!f.graph_->contains(x)) input_error("unknown_vertex", "component site " + std::to_string(x) + " is not a vertex");
    }
    f.insert_checked(sites, component);
  }
  return f;
}

UniformFunction UniformFunction::make_translated(GraphPtr graph, int num_states, StateIndex base, int radius,
                                                 const Expansion& templates, Rational constant) {
  if (!graph) input_error("bad_function", "uniform function needs a graph");
  if (!graph->is_lattice() || !graph->is_window_of_infinite()) {
    domain_error("translated_requires_lattice", "translated families need a lattice window of Z");
  }
  if (radius < 0) input_error("bad_function", "radius must be nonnegative");
  UniformFunction f;
  f.kind_ = FamilyKind::translated;
  f.graph_ = std::move(graph);
  f.num_states_ = num_states;
  f.base_ = base;
  f.radius_ = radius;
  f.constant_ = std::move(constant);
  for (const auto& [sites, component] : templates) {
    if (sites.empty()) {
      f.constant_ += component.function().table().front();
      continue;
    }
    const Site shift = -sites.front();
    const ExactSupportFunction normalised = shifted(component, shift);
    f.insert_checked(normalised.support(), normalised);
  }
  return f;
}

UniformFunction UniformFunction::zero(GraphPtr graph, int num_states, StateIndex base) {
  return make_explicit(std::move(graph), num_states, base, 0, {});
}

void UniformFunction::insert_checked(const SiteSet& sites, const ExactSupportFunction& component) {
  if (component.support() != sites) input_error("bad_function", "component key does not match its support");
  if (component.num_states() != num_states_) input_error("state_space_mismatch", "component uses another state space");
  if (component.base() != base_) domain_error("base_mismatch", "component is expanded at another base state");
  if (diameter_of(sites) > radius_) {
    domain_error("radius_exceeded", "component diameter " + std::to_string(diameter_of(sites)) +
                                        " exceeds radius " + std::to_string(radius_));
  }
  auto it = components_.find(sites);
  if (it == components_.end()) {
    if (!component.is_zero()) components_.emplace(sites, component);
    return;
  }
  LocalFunction sum = it->second.function() + component.function();
  if (sum.is_zero()) {
    components_.erase(it);
  } else {
    it->second = ExactSupportFunction(std::move(sum), base_);
  }
}

int UniformFunction::diameter_of(const SiteSet& sites) const {
  if (kind_ == FamilyKind::translated) {
    if (sites.size() < 2) return 0;
    const Site span = sites.back() - sites.front();
    const Site k = graph_->range();
    return static_cast<int>((span + k - 1) / k);
  }
  return graph_->diameter(sites);
}

void UniformFunction::for_each_touching(const SiteSet& sites,
                                        const std::function<void(Site, const ExactSupportFunction&)>& visit) const {
  if (kind_ == FamilyKind::explicit_family) {
    for (const auto& [lambda, component] : components_) {
      if (meets(lambda, sites)) visit(0, component);
    }
    return;
  }
  for (const auto& [lambda, component] : components_) {
    std::set<Site> shifts;
    for (Site d : sites) {
      for (Site o : lambda) shifts.insert(d - o);
    }
    for (Site t : shifts) visit(t, component);
  }
}

UniformFunction UniformFunction::materialize() const {
  if (kind_ == FamilyKind::explicit_family) return *this;
  const auto [a, b] = graph_->window();
  UniformFunction out = make_explicit(graph_, num_states_, base_, radius_, {}, constant_);
  for (const auto& [lambda, component] : components_) {
    for (Site t = a; t + lambda.back() <= b; ++t) {
      const ExactSupportFunction moved = shifted(component, t);
      out.insert_checked(moved.support(), moved);
    }
  }
  return out;
}

bool UniformFunction::same_family(const UniformFunction& other) const {
  return kind_ == other.kind_ && base_ == other.base_ && num_states_ == other.num_states_ &&
         constant_ == other.constant_ && components_ == other.components_ && same_graph(graph_, other.graph_);
}

Rational evaluate(const UniformFunction& f, const Configuration& eta) {
  check_graph(f.graph(), eta.graph());
  if (f.base() != eta.base()) domain_error("base_mismatch", "configuration and function use different base states");
  const SiteSet supp = eta.support();
  Rational total = f.constant();
  if (f.kind() == FamilyKind::explicit_family) {
    for (const auto& [lambda, component] : f.components()) {
      if (is_subset(lambda, supp)) total += evaluate_at(component, 0, eta);
    }
    return total;
  }
  for (const auto& [lambda, component] : f.components()) {
    for (Site t : supp) {
      bool inside = true;
      for (Site o : lambda) inside = inside && std::binary_search(supp.begin(), supp.end(), o + t);
      if (inside) total += evaluate_at(component, t, eta);
    }
  }
  return total;
}

Rational difference(const UniformFunction& f, const Configuration& eta, const Configuration& eta_prime) {
  check_graph(f.graph(), eta.graph());
  check_graph(eta.graph(), eta_prime.graph());
  if (eta.base() != eta_prime.base()) {
    domain_error("base_mismatch", "configurations must share a base state for a finite difference set");
  }
  const SiteSet delta = difference_set(eta, eta_prime);
  Rational total = 0;
  f.for_each_touching(delta, [&](Site t, const ExactSupportFunction& component) {
    total += evaluate_at(component, t, eta_prime);
    total -= evaluate_at(component, t, eta);
  });
  return total;
}

UniformFunction sum_of_uniformly_local(const LocalSystem& system, int radius, GraphPtr graph, int num_states,
                                       StateIndex base, const Caps& caps) {
  if (!graph) input_error("bad_function", "system needs a graph");
  if (radius < 0) input_error("bad_function", "radius must be nonnegative");
  Expansion merged;
  for (const auto& [x, fx] : system) {
    if (fx.num_states() != num_states) input_error("state_space_mismatch", "system mixes state spaces");
    const SiteSet ball = graph->ball(x, Rational(radius));
    if (!is_subset(fx.support(), ball)) {
      domain_error("locality_violation", "f_" + graph->label(x) + " is not supported in B(x, " +
                                             std::to_string(radius) + ")");
    }
    const std::vector<StateIndex> ground(fx.support().size(), base);
    if (fx.at(ground) != 0) {
      domain_error("normalization_violation", "f_" + graph->label(x) + " does not vanish at the ground configuration");
    }
    for (auto& [lambda, component] : expand(fx, base, caps)) {
      auto it = merged.find(lambda);
      if (it == merged.end()) {
        merged.emplace(lambda, component);
      } else {
        it->second = ExactSupportFunction(it->second.function() + component.function(), base);
      }
    }
  }
  return UniformFunction::make_explicit(std::move(graph), num_states, base, 2 * radius, merged);
}

LocalSystem to_uniformly_local(const UniformFunction& f) {
  const UniformFunction g = f.materialize();
  if (g.constant() != 0) {
    domain_error("normalization_violation", "uniform function must be normalised so that f*_∅ = 0");
  }
  LocalSystem system;
  for (Site x : g.graph()->vertices()) {
    SiteSet support;
    for (const auto& [lambda, component] : g.components()) {
      if (std::binary_search(lambda.begin(), lambda.end(), x)) support.insert(support.end(), lambda.begin(), lambda.end());
    }
    support = normalise_sites(std::move(support));
    LocalFunction fx = LocalFunction::zero(g.num_states(), support);
    for (const auto& [lambda, component] : g.components()) {
      if (!std::binary_search(lambda.begin(), lambda.end(), x)) continue;
      fx += Rational(1, static_cast<unsigned long>(lambda.size())) * component.function().extend_to(support);
    }
    system.emplace(x, std::move(fx));
  }
  return system;
}

UniformFunction rebase(const UniformFunction& f, StateIndex new_base, const Caps& caps) {
  if (new_base < 0 || new_base >= f.num_states()) input_error("unknown_state", "base state out of range");
  Expansion aggregate;
  for (const auto& [lambda, component] : f.components()) {
    for (auto& [sub, part] : expand(component.function(), new_base, caps)) {
      if (sub.empty()) continue;  // f*_∅ is carried over unchanged
      SiteSet key = sub;
      ExactSupportFunction value = part;
      if (f.kind() == FamilyKind::translated) {
        value = shifted(part, -sub.front());
        key = value.support();
      }
      auto it = aggregate.find(key);
      if (it == aggregate.end()) {
        aggregate.emplace(key, value);
      } else {
        it->second = ExactSupportFunction(it->second.function() + value.function(), new_base);
      }
    }
  }
  for (auto it = aggregate.begin(); it != aggregate.end();) {
    it = it->second.is_zero() ? aggregate.erase(it) : std::next(it);
  }
  if (f.kind() == FamilyKind::translated) {
    return UniformFunction::make_translated(f.graph(), f.num_states(), new_base, f.radius(), aggregate, f.constant());
  }
  return UniformFunction::make_explicit(f.graph(), f.num_states(), new_base, f.radius(), aggregate, f.constant());
}

UniformFunction xi_X(const ConservedQuantity& xi, GraphPtr graph, StateIndex base) {
  const int q = static_cast<int>(xi.values.size());
  if (base < 0 || base >= q) input_error("unknown_state", "base state out of range");
  if (xi.values[static_cast<std::size_t>(base)] != 0) {
    domain_error("not_normalized", "conserved quantity must vanish at the base state");
  }
  Expansion components;
  auto single = [&](Site x) {
    return ExactSupportFunction(LocalFunction(q, {x}, xi.values), base);
  };
  const bool zero = std::all_of(xi.values.begin(), xi.values.end(), [](const Rational& v) { return v == 0; });
  if (graph->is_lattice() && graph->is_window_of_infinite()) {
    if (!zero) components.emplace(SiteSet{0}, single(0));
    return UniformFunction::make_translated(std::move(graph), q, base, 0, components);
  }
  if (!zero) {
    for (Site x : graph->vertices()) components.emplace(SiteSet{x}, single(x));
  }
  return UniformFunction::make_explicit(std::move(graph), q, base, 0, components);
}

}  // namespace latticecalc
