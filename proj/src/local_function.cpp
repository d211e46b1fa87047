#include "latticecalc/local_function.hpp"

#include <algorithm>
#include <bit>

#include "latticecalc/error.hpp"

namespace latticecalc {
namespace {

std::size_t power(std::size_t base, std::size_t exponent) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exponent; ++i) out *= base;
  return out;
}

// Positions in `outer` of the elements of `inner` (inner ⊆ outer, both sorted).
std::vector<std::size_t> positions_in(const SiteSet& inner, const SiteSet& outer) {
  std::vector<std::size_t> pos;
  pos.reserve(inner.size());
  for (Site s : inner) {
    auto it = std::lower_bound(outer.begin(), outer.end(), s);
    if (it == outer.end() || *it != s) domain_error("support_not_contained", "support is not contained in the target set");
    pos.push_back(static_cast<std::size_t>(it - outer.begin()));
  }
  return pos;
}

}  // namespace

void check_table_caps(int num_states, std::size_t support_size, const Caps& caps) {
  if (support_size > caps.max_support_sites) {
    domain_error("cap_exceeded", "support of " + std::to_string(support_size) + " sites exceeds the cap of " +
                                     std::to_string(caps.max_support_sites));
  }
  std::size_t entries = 1;
  for (std::size_t i = 0; i < support_size; ++i) {
    entries *= static_cast<std::size_t>(num_states);
    if (entries > caps.max_table_entries) domain_error("cap_exceeded", "dense table exceeds the entry cap");
  }
}

SiteSet normalise_sites(std::vector<Site> sites) {
  std::sort(sites.begin(), sites.end());
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
  return sites;
}

SiteSet intersect(const SiteSet& a, const SiteSet& b) {
  SiteSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_subset(const SiteSet& inner, const SiteSet& outer) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

LocalFunction::LocalFunction(int num_states, SiteSet support, std::vector<Rational> table)
    : num_states_(num_states), support_(std::move(support)), table_(std::move(table)) {
  if (num_states_ < 1) input_error("bad_function", "state space must be non-empty");
  for (std::size_t i = 1; i < support_.size(); ++i) {
    if (support_[i - 1] >= support_[i]) input_error("bad_function", "support must be sorted and distinct");
  }
  if (table_.size() != power(static_cast<std::size_t>(num_states_), support_.size())) {
    input_error("bad_function", "table size does not match |S|^|support|");
  }
}

LocalFunction LocalFunction::zero(int num_states, SiteSet support) {
  const std::size_t n = power(static_cast<std::size_t>(num_states), support.size());
  return LocalFunction(num_states, std::move(support), std::vector<Rational>(n, Rational(0)));
}

LocalFunction LocalFunction::constant(int num_states, const Rational& value) {
  return LocalFunction(num_states, {}, {value});
}

LocalFunction LocalFunction::from_rule(int num_states, SiteSet support,
                                       const std::function<Rational(std::span<const StateIndex>)>& rule) {
  LocalFunction f = zero(num_states, std::move(support));
  for (std::size_t i = 0; i < f.table_.size(); ++i) {
    const auto tuple = f.tuple_at(i);
    f.table_[i] = rule(tuple);
  }
  return f;
}

std::size_t LocalFunction::entry_index(std::span<const StateIndex> tuple) const {
  if (tuple.size() != support_.size()) input_error("bad_tuple", "tuple length does not match support");
  std::size_t index = 0;
  for (StateIndex s : tuple) {
    if (s < 0 || s >= num_states_) input_error("unknown_state", "state index out of range");
    index = index * static_cast<std::size_t>(num_states_) + static_cast<std::size_t>(s);
  }
  return index;
}

std::vector<StateIndex> LocalFunction::tuple_at(std::size_t index) const {
  std::vector<StateIndex> tuple(support_.size());
  for (std::size_t i = support_.size(); i-- > 0;) {
    tuple[i] = static_cast<StateIndex>(index % static_cast<std::size_t>(num_states_));
    index /= static_cast<std::size_t>(num_states_);
  }
  return tuple;
}

Rational LocalFunction::evaluate(const std::function<StateIndex(Site)>& state_at) const {
  std::size_t index = 0;
  for (Site x : support_) index = index * static_cast<std::size_t>(num_states_) + static_cast<std::size_t>(state_at(x));
  return table_[index];
}

LocalFunction LocalFunction::extend_to(const SiteSet& larger) const {
  const auto pos = positions_in(support_, larger);
  LocalFunction out = zero(num_states_, larger);
  std::vector<StateIndex> sub(support_.size());
  for (std::size_t i = 0; i < out.table_.size(); ++i) {
    const auto tuple = out.tuple_at(i);
    for (std::size_t j = 0; j < pos.size(); ++j) sub[j] = tuple[pos[j]];
    out.table_[i] = at(sub);
  }
  return out;
}

bool LocalFunction::is_zero() const {
  return std::all_of(table_.begin(), table_.end(), [](const Rational& v) { return v == 0; });
}

LocalFunction& LocalFunction::operator+=(const LocalFunction& other) {
  if (other.num_states_ != num_states_) input_error("state_space_mismatch", "functions use different state spaces");
  if (other.support_ != support_) {
    const SiteSet joint = normalise_sites([&] {
      SiteSet all = support_;
      all.insert(all.end(), other.support_.begin(), other.support_.end());
      return all;
    }());
    *this = extend_to(joint);
    return *this += other.extend_to(joint);
  }
  for (std::size_t i = 0; i < table_.size(); ++i) table_[i] += other.table_[i];
  return *this;
}

LocalFunction& LocalFunction::operator-=(const LocalFunction& other) { return *this += Rational(-1) * other; }

LocalFunction& LocalFunction::operator*=(const Rational& scalar) {
  for (auto& v : table_) v *= scalar;
  return *this;
}

ExactSupportFunction::ExactSupportFunction(LocalFunction f, StateIndex base) : f_(std::move(f)), base_(base) {
  if (base_ < 0 || base_ >= f_.num_states()) input_error("unknown_state", "base state out of range");
  if (!is_exact_support(f_, base_)) {
    domain_error("not_exact_support", "component does not vanish where a coordinate is the base state");
  }
}

bool is_exact_support(const LocalFunction& f, StateIndex base) {
  for (std::size_t i = 0; i < f.table().size(); ++i) {
    if (f.table()[i] == 0) continue;
    const auto tuple = f.tuple_at(i);
    if (std::find(tuple.begin(), tuple.end(), base) != tuple.end()) return false;
  }
  return true;
}

LocalFunction restrict(const LocalFunction& f, const SiteSet& sites, StateIndex base) {
  const SiteSet kept = intersect(f.support(), sites);
  const auto pos = positions_in(kept, f.support());
  const LocalFunction shape = LocalFunction::zero(f.num_states(), kept);
  std::vector<Rational> table(shape.table().size());
  std::vector<StateIndex> full(f.support().size(), base);
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto tuple = shape.tuple_at(i);
    for (std::size_t j = 0; j < pos.size(); ++j) full[pos[j]] = tuple[j];
    table[i] = f.at(full);
  }
  return LocalFunction(f.num_states(), kept, std::move(table));
}

Expansion expand(const LocalFunction& f, StateIndex base, const Caps& caps) {
  const int q = f.num_states();
  if (base < 0 || base >= q) input_error("unknown_state", "base state out of range");
  const std::size_t n = f.support().size();
  check_table_caps(q, n, caps);

  // Off-base states in ascending order; components are only ever nonzero on
  // tuples drawn from these.
  std::vector<StateIndex> off;
  for (StateIndex s = 0; s < q; ++s) {
    if (s != base) off.push_back(s);
  }
  const std::size_t r = off.size();

  // Subsets of support positions in size order, then lexicographic.
  std::vector<std::uint64_t> masks;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) masks.push_back(m);
  auto sites_of = [&](std::uint64_t m) {
    SiteSet s;
    for (std::size_t i = 0; i < n; ++i) {
      if (m & (std::uint64_t{1} << i)) s.push_back(f.support()[i]);
    }
    return s;
  };
  std::stable_sort(masks.begin(), masks.end(), [&](std::uint64_t a, std::uint64_t b) {
    return SiteSetOrder{}(sites_of(a), sites_of(b));
  });

  // off_tables[m][k]: f*_Λ at the k-th off-base tuple on Λ (mixed radix r).
  std::vector<std::vector<Rational>> off_tables(std::size_t{1} << n);
  std::vector<StateIndex> full(n);
  std::vector<std::size_t> digits;
  Expansion out;
  for (std::uint64_t m : masks) {
    const auto k = static_cast<std::size_t>(std::popcount(m));
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i) {
      if (m & (std::uint64_t{1} << i)) members.push_back(i);
    }
    auto& table = off_tables[m];
    table.assign(power(r, k), Rational(0));
    digits.assign(k, 0);
    for (std::size_t idx = 0; idx < table.size(); ++idx) {
      std::size_t rest = idx;
      for (std::size_t j = k; j-- > 0;) {
        digits[j] = rest % r;
        rest /= r;
      }
      std::fill(full.begin(), full.end(), base);
      for (std::size_t j = 0; j < k; ++j) full[members[j]] = off[digits[j]];
      Rational value = f.at(full);
      // Subtract every proper sub-component evaluated on the same tuple.
      for (std::uint64_t sub = (m - 1) & m;; sub = (sub - 1) & m) {
        if (sub != m) {
          std::size_t sub_idx = 0;
          for (std::size_t j = 0; j < k; ++j) {
            if (sub & (std::uint64_t{1} << members[j])) sub_idx = sub_idx * r + digits[j];
          }
          value -= off_tables[sub][sub_idx];
        }
        if (sub == 0) break;
      }
      table[idx] = std::move(value);
    }
    if (m == 0) {
      if (table[0] != 0) out.emplace(SiteSet{}, ExactSupportFunction(LocalFunction::constant(q, table[0]), base));
      continue;
    }
    if (std::all_of(table.begin(), table.end(), [](const Rational& v) { return v == 0; })) continue;
    const SiteSet lambda = sites_of(m);
    LocalFunction component = LocalFunction::zero(q, lambda);
    std::vector<Rational> entries = component.table();
    std::vector<StateIndex> tuple(k);
    for (std::size_t idx = 0; idx < table.size(); ++idx) {
      std::size_t rest = idx;
      for (std::size_t j = k; j-- > 0;) {
        tuple[j] = off[rest % r];
        rest /= r;
      }
      entries[component.entry_index(tuple)] = table[idx];
    }
    out.emplace(lambda, ExactSupportFunction(LocalFunction(q, lambda, std::move(entries)), base));
  }
  return out;
}

LocalFunction assemble(const Expansion& components, const SiteSet& sites, int num_states) {
  LocalFunction out = LocalFunction::zero(num_states, sites);
  for (const auto& [lambda, component] : components) {
    if (!is_subset(lambda, sites)) {
      domain_error("support_not_contained", "component support is not contained in the target set");
    }
    out += component.function().extend_to(sites);
  }
  return out;
}

}  // namespace latticecalc
