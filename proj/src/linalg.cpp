#include "latticecalc/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace latticecalc::linalg {
namespace {

const Integer* find_entry(const SparseIntegerRow& row, std::size_t column) {
  auto it = std::lower_bound(row.begin(), row.end(), column,
                             [](const auto& entry, std::size_t c) { return entry.first < c; });
  if (it == row.end() || it->first != column) return nullptr;
  return &it->second;
}

// alpha * x + beta * y
SparseIntegerRow combine(const Integer& alpha, const SparseIntegerRow& x, const Integer& beta,
                         const SparseIntegerRow& y) {
  SparseIntegerRow out;
  out.reserve(x.size() + y.size());
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() || j != y.end()) {
    if (j == y.end() || (i != x.end() && i->first < j->first)) {
      out.emplace_back(i->first, alpha * i->second);
      ++i;
    } else if (i == x.end() || j->first < i->first) {
      out.emplace_back(j->first, beta * j->second);
      ++j;
    } else {
      Integer v = alpha * i->second + beta * j->second;
      if (v != 0) out.emplace_back(i->first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

// Divides by the content and makes the leading entry positive.
void make_primitive(SparseIntegerRow& row) {
  if (row.empty()) return;
  Integer g = 0;
  for (const auto& [c, v] : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  if (row.front().second < 0) g = -g;
  if (g != 1) {
    for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  }
}

SparseIntegerRow to_integer_row(const std::vector<std::pair<std::size_t, Rational>>& row) {
  Integer denominators = 1;
  for (const auto& [c, v] : row) {
    if (v != 0) mpz_lcm(denominators.get_mpz_t(), denominators.get_mpz_t(), v.get_den_mpz_t());
  }
  SparseIntegerRow out;
  out.reserve(row.size());
  for (const auto& [c, v] : row) {
    if (v == 0) continue;
    Integer scaled = v.get_num() * (denominators / v.get_den());
    out.emplace_back(c, std::move(scaled));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i].first == out[i - 1].first) throw std::invalid_argument("duplicate column in sparse row");
  }
  return out;
}

}  // namespace

EchelonBuilder::EchelonBuilder(std::size_t columns) : columns_(columns), row_of_(columns, -1) {}

bool EchelonBuilder::add_row(const RationalVector& row) {
  if (row.size() != columns_) throw std::invalid_argument("row length does not match column count");
  std::vector<std::pair<std::size_t, Rational>> sparse;
  for (std::size_t c = 0; c < row.size(); ++c) {
    if (row[c] != 0) sparse.emplace_back(c, row[c]);
  }
  return add_row(sparse);
}

bool EchelonBuilder::add_row(const std::vector<std::pair<std::size_t, Rational>>& row) {
  return add_row(to_integer_row(row));
}

bool EchelonBuilder::add_row(SparseIntegerRow row) {
  for (const auto& [c, v] : row) {
    if (c >= columns_) throw std::out_of_range("column index out of range");
  }
  std::vector<std::size_t> hits;
  for (const auto& [c, v] : row) {
    if (row_of_[c] >= 0) hits.push_back(c);
  }
  for (std::size_t pivot : hits) {
    const Integer* a = find_entry(row, pivot);
    if (a == nullptr) continue;
    const PivotRow& p = rows_[static_cast<std::size_t>(row_of_[pivot])];
    const Integer& d = p.entries.front().second;
    Integer g;
    mpz_gcd(g.get_mpz_t(), a->get_mpz_t(), d.get_mpz_t());
    Integer alpha = d / g;
    Integer beta = -(*a) / g;
    row = combine(alpha, row, beta, p.entries);
    make_primitive(row);
  }
  if (row.empty()) return false;
  make_primitive(row);
  const std::size_t pivot = row.front().first;
  const Integer& lead = row.front().second;
  for (PivotRow& other : rows_) {
    const Integer* b = find_entry(other.entries, pivot);
    if (b == nullptr) continue;
    Integer g;
    mpz_gcd(g.get_mpz_t(), b->get_mpz_t(), lead.get_mpz_t());
    Integer alpha = lead / g;
    Integer beta = -(*b) / g;
    other.entries = combine(alpha, other.entries, beta, row);
    make_primitive(other.entries);
  }
  auto pos = std::lower_bound(rows_.begin(), rows_.end(), pivot,
                              [](const PivotRow& r, std::size_t c) { return r.pivot < c; });
  rows_.insert(pos, PivotRow{pivot, std::move(row)});
  std::fill(row_of_.begin(), row_of_.end(), -1);
  for (std::size_t i = 0; i < rows_.size(); ++i) row_of_[rows_[i].pivot] = static_cast<std::ptrdiff_t>(i);
  return true;
}

std::vector<std::size_t> EchelonBuilder::pivot_columns() const {
  std::vector<std::size_t> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(r.pivot);
  return out;
}

RationalMatrix EchelonBuilder::rref() const {
  RationalMatrix out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) {
    RationalVector dense(columns_, Rational(0));
    const Integer& lead = r.entries.front().second;
    for (const auto& [c, v] : r.entries) {
      dense[c] = Rational(v, lead);
      dense[c].canonicalize();
    }
    out.push_back(std::move(dense));
  }
  return out;
}

RationalMatrix EchelonBuilder::nullspace() const {
  RationalMatrix out;
  for (std::size_t f = 0; f < columns_; ++f) {
    if (row_of_[f] >= 0) continue;
    RationalVector v(columns_, Rational(0));
    v[f] = 1;
    for (const auto& r : rows_) {
      const Integer* entry = find_entry(r.entries, f);
      if (entry == nullptr) continue;
      Rational q(-(*entry), r.entries.front().second);
      q.canonicalize();
      v[r.pivot] = q;
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::size_t rank(const RationalMatrix& matrix, std::size_t columns) {
  EchelonBuilder builder(columns);
  for (const auto& row : matrix) builder.add_row(row);
  return builder.rank();
}

RationalMatrix nullspace(const RationalMatrix& matrix, std::size_t columns) {
  EchelonBuilder builder(columns);
  for (const auto& row : matrix) builder.add_row(row);
  return builder.nullspace();
}

RationalMatrix rref(const RationalMatrix& matrix, std::size_t columns) {
  EchelonBuilder builder(columns);
  for (const auto& row : matrix) builder.add_row(row);
  return builder.rref();
}

}  // namespace latticecalc::linalg
