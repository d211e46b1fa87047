#include "latticecalc/cohomology.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "latticecalc/error.hpp"
#include "latticecalc/linalg.hpp"

namespace latticecalc {
namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), count_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    parent_[std::max(a, b)] = std::min(a, b);
    --count_;
  }
  std::size_t count() const { return count_; }

 private:
  std::vector<std::size_t> parent_;
  std::size_t count_;
};

}  // namespace

CochainSpaceSummary h0_h1_finite(const Interaction& phi, const SiteGraph& g, const Caps& caps) {
  const auto q = static_cast<std::size_t>(phi.num_states());
  const std::size_t n = g.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= q;
    if (total > caps.max_configurations) {
      domain_error("cap_exceeded", "|S|^|X| exceeds the configuration cap of " +
                                       std::to_string(caps.max_configurations));
    }
  }
  // Mixed radix over vertices, first vertex most significant.
  std::vector<std::size_t> weight(n, 1);
  for (std::size_t i = n; i-- > 1;) weight[i - 1] = weight[i] * q;

  std::set<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<StateIndex> states(n);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t rest = code;
    for (std::size_t i = 0; i < n; ++i) {
      states[i] = static_cast<StateIndex>(rest / weight[i]);
      rest %= weight[i];
    }
    for (const auto& [x, y] : g.edges()) {
      const std::size_t xi = g.index_of(x), yi = g.index_of(y);
      const StatePair from{states[xi], states[yi]};
      for (const StatePair& to : phi.neighbors(from)) {
        const std::size_t other = code - static_cast<std::size_t>(from.first) * weight[xi] -
                                  static_cast<std::size_t>(from.second) * weight[yi] +
                                  static_cast<std::size_t>(to.first) * weight[xi] +
                                  static_cast<std::size_t>(to.second) * weight[yi];
        if (other != code) pairs.emplace(std::min(code, other), std::max(code, other));
      }
    }
  }

  UnionFind components(total);
  linalg::EchelonBuilder d(total);
  for (const auto& [u, v] : pairs) {
    components.unite(u, v);
    d.add_row(linalg::SparseIntegerRow{{u, Integer(-1)}, {v, Integer(1)}});
  }

  CochainSpaceSummary s;
  s.dim_c0 = total;
  s.dim_c1 = pairs.size();
  s.rank_d = d.rank();
  s.h0_components = components.count();
  s.h0_kernel = total - s.rank_d;
  s.h0 = s.h0_kernel;
  s.h1 = s.dim_c1 - s.rank_d;
  if (s.h0_components != s.h0_kernel) {
    domain_error("internal_mismatch", "component count and kernel rank disagree");
  }
  return s;
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::unequal_single_site: return "UnequalSingleSite";
    case ViolationKind::nonzero_multi_site: return "NonzeroMultiSite";
    case ViolationKind::not_conserved_pair: return "NotConservedPair";
    case ViolationKind::not_invariant: return "NotInvariant";
  }
  return "unknown";
}

ExtractionResult extract_conserved(const UniformFunction& f, const Interaction& phi) {
  if (f.num_states() != phi.num_states()) input_error("state_space_mismatch", "function and interaction disagree on S");
  if (f.constant() != 0) domain_error("normalization_violation", "f must satisfy f*_∅ = 0");
  const int q = f.num_states();
  ExtractionResult result;
  auto fail = [&](ViolationKind kind, std::string message, SiteSet sites, std::optional<PhiEdge> edge = {}) {
    result.violation = Violation{kind, std::move(message), std::move(sites), edge};
    return result;
  };
  auto single_table = [&](Site x) {
    auto it = f.components().find(SiteSet{x});
    if (it == f.components().end()) return std::vector<Rational>(static_cast<std::size_t>(q), Rational(0));
    return it->second.function().table();
  };

  std::vector<Rational> xi;
  if (f.kind() == FamilyKind::translated) {
    xi = single_table(0);
  } else {
    const auto& vertices = f.graph()->vertices();
    xi = single_table(vertices.front());
    for (Site x : vertices) {
      if (single_table(x) != xi) {
        return fail(ViolationKind::unequal_single_site,
                    "single-site components at " + f.graph()->label(vertices.front()) + " and " +
                        f.graph()->label(x) + " differ",
                    {vertices.front(), x});
      }
    }
  }
  for (const auto& [lambda, component] : f.components()) {
    if (lambda.size() >= 2) {
      return fail(ViolationKind::nonzero_multi_site, "component on a multi-site support is nonzero", lambda);
    }
  }
  ConservedQuantity candidate{xi};
  if (auto edge = conservation_violation(phi, candidate)) {
    return fail(ViolationKind::not_conserved_pair, "single-site table is not conserved by the interaction", {}, edge);
  }
  const UniformFunction rebuilt = xi_X(candidate, f.graph(), f.base());
  if (rebuilt.materialize().components() != f.materialize().components()) {
    return fail(ViolationKind::not_invariant, "f differs from ξ_X for the extracted ξ", {});
  }
  result.conserved = std::move(candidate);
  return result;
}

namespace {

struct KernelColumns {
  std::vector<SiteSet> supports;
  std::vector<std::size_t> offset;
  std::vector<std::vector<std::size_t>> touching;  // by site - a
  std::size_t total = 0;
};

}  // namespace

KernelResult invariance_kernel(const Interaction& phi, int radius, int k, Site a, Site b, StateIndex base,
                               const KernelOptions& options) {
  if (radius < 0) input_error("bad_argument", "radius must be nonnegative");
  if (k < 1) input_error("bad_argument", "lattice range must be at least 1");
  const int q = phi.num_states();
  if (base < 0 || base >= q) input_error("unknown_state", "base state out of range");
  if (b < a || b - a + 1 < 4 * (static_cast<Site>(radius) + 1)) {
    domain_error("window_too_small", "window length must be at least 4(R+1)");
  }
  const Caps& caps = options.caps;
  const GraphPtr graph = share(SiteGraph::lattice_z(k, a, b, true, caps));
  const std::size_t p = options.probe_bound.value_or(static_cast<std::size_t>(radius) + 3);
  const std::size_t pe = options.exchange_probe_bound.value_or(p);
  const std::size_t r = static_cast<std::size_t>(q - 1);
  const Site inner_lo = a + radius, inner_hi = b - radius;

  KernelColumns cols;
  const Site reach = static_cast<Site>(radius) * k;
  for (Site m = a; m <= b; ++m) {
    const Site top = std::min(b, m + reach);
    const auto extra = static_cast<std::size_t>(top - m);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << extra); ++mask) {
      SiteSet lambda{m};
      for (std::size_t i = 0; i < extra; ++i) {
        if (mask & (std::uint64_t{1} << i)) lambda.push_back(m + 1 + static_cast<Site>(i));
      }
      cols.supports.push_back(std::move(lambda));
    }
  }
  std::sort(cols.supports.begin(), cols.supports.end(), SiteSetOrder{});
  cols.touching.assign(static_cast<std::size_t>(b - a + 1), {});
  for (std::size_t i = 0; i < cols.supports.size(); ++i) {
    cols.offset.push_back(cols.total);
    std::size_t width = 1;
    for (std::size_t j = 0; j < cols.supports[i].size(); ++j) width *= r;
    cols.total += width;
    if (cols.total > caps.max_kernel_unknowns) domain_error("cap_exceeded", "kernel unknowns exceed the cap");
    for (Site x : cols.supports[i]) cols.touching[static_cast<std::size_t>(x - a)].push_back(i);
  }

  auto rank_of = [&](StateIndex s) { return static_cast<std::size_t>(s < base ? s : s - 1); };
  auto column = [&](std::size_t support, const Configuration& eta) -> std::optional<std::size_t> {
    std::size_t code = 0;
    for (Site x : cols.supports[support]) {
      const StateIndex s = eta.at(x);
      if (s == base) return std::nullopt;
      code = code * r + rank_of(s);
    }
    return cols.offset[support] + code;
  };

  std::set<std::vector<std::pair<std::size_t, long>>> rows;
  auto add_difference = [&](const Configuration& eta, const Configuration& eta_prime) {
    std::vector<std::size_t> hit;
    for (Site d : difference_set(eta, eta_prime)) {
      const auto& t = cols.touching[static_cast<std::size_t>(d - a)];
      hit.insert(hit.end(), t.begin(), t.end());
    }
    std::sort(hit.begin(), hit.end());
    hit.erase(std::unique(hit.begin(), hit.end()), hit.end());
    std::map<std::size_t, long> row;
    for (std::size_t support : hit) {
      if (auto c = column(support, eta_prime)) row[*c] += 1;
      if (auto c = column(support, eta)) row[*c] -= 1;
    }
    std::vector<std::pair<std::size_t, long>> entries;
    for (const auto& [c, v] : row) {
      if (v != 0) entries.emplace_back(c, v);
    }
    if (!entries.empty()) rows.insert(std::move(entries));
  };

  SiteSet window_sites;
  for (Site x = a; x <= b; ++x) window_sites.push_back(x);
  const std::vector<Configuration> probes =
      configurations_up_to(graph, q, base, window_sites, std::max(p, pe), caps.max_configurations);
  const EdgeWindow inner_edges = edge_window_between(*graph, inner_lo, inner_hi);
  const bool exchange = options.exchange_constraints && is_exchangeable(phi);
  for (const Configuration& eta : probes) {
    if (eta.support_size() <= p) {
      for (const Transition& t : neighbors(phi, eta, inner_edges)) add_difference(t.before, t.after);
    }
    if (exchange && eta.support_size() <= pe) {
      for (Site x = inner_lo; x <= inner_hi; ++x) {
        for (Site y = x + 1; y <= inner_hi; ++y) {
          if (eta.at(x) != eta.at(y)) add_difference(eta, eta.swapped(x, y));
        }
      }
    }
  }

  linalg::EchelonBuilder system(cols.total);
  for (const auto& entries : rows) {
    linalg::SparseIntegerRow row;
    for (const auto& [c, v] : entries) row.emplace_back(c, Integer(v));
    system.add_row(std::move(row));
  }
  const linalg::RationalMatrix null = system.nullspace();

  // Project onto components inside the constrained zone.
  std::vector<std::size_t> inner_columns;
  std::vector<std::pair<std::size_t, std::size_t>> owner;  // (support, code) per inner column
  for (std::size_t i = 0; i < cols.supports.size(); ++i) {
    const SiteSet& lambda = cols.supports[i];
    if (lambda.front() < inner_lo || lambda.back() > inner_hi) continue;
    const std::size_t width = (i + 1 < cols.offset.size() ? cols.offset[i + 1] : cols.total) - cols.offset[i];
    for (std::size_t c = 0; c < width; ++c) {
      inner_columns.push_back(cols.offset[i] + c);
      owner.emplace_back(i, c);
    }
  }
  linalg::RationalMatrix projected;
  for (const auto& v : null) {
    linalg::RationalVector w;
    w.reserve(inner_columns.size());
    for (std::size_t c : inner_columns) w.push_back(v[c]);
    projected.push_back(std::move(w));
  }
  const linalg::RationalMatrix basis_rows = linalg::rref(projected, inner_columns.size());

  KernelResult result;
  result.a = a;
  result.b = b;
  result.radius = radius;
  result.range = k;
  result.probe_bound = p;
  result.unknowns = cols.total;
  result.constraint_rank = system.rank();
  result.full_nullity = null.size();
  result.dimension = basis_rows.size();

  std::vector<StateIndex> off;
  for (StateIndex s = 0; s < q; ++s) {
    if (s != base) off.push_back(s);
  }
  for (const auto& row : basis_rows) {
    std::map<std::size_t, std::vector<Rational>> tables;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] == 0) continue;
      const auto [support, code] = owner[j];
      const SiteSet& lambda = cols.supports[support];
      auto& table = tables[support];
      if (table.empty()) table = LocalFunction::zero(q, lambda).table();
      // Decode the off-base tuple and place it in the dense table.
      std::vector<StateIndex> tuple(lambda.size());
      std::size_t rest = code;
      for (std::size_t t = lambda.size(); t-- > 0;) {
        tuple[t] = off[rest % r];
        rest /= r;
      }
      table[LocalFunction::zero(q, lambda).entry_index(tuple)] = row[j];
    }
    Expansion components;
    for (auto& [support, table] : tables) {
      const SiteSet& lambda = cols.supports[support];
      components.emplace(lambda, ExactSupportFunction(LocalFunction(q, lambda, std::move(table)), base));
    }
    result.basis.push_back(UniformFunction::make_explicit(graph, q, base, radius, components));
  }

  if (options.verify) {
    const EdgeWindow check_edges = edge_window_between(*graph, a + 2 * radius, b - 2 * radius);
    std::vector<Configuration> check_probes;
    for (const Configuration& eta : probes) {
      if (eta.support_size() <= p) check_probes.push_back(eta);
    }
    bool all = true;
    for (const UniformFunction& f : result.basis) all = all && is_invariant(f, phi, check_edges, check_probes).invariant;
    result.verified = all;
  }
  return result;
}

}  // namespace latticecalc
