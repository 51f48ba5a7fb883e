#include "ramop/linear.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "ramop/parallel.hpp"

namespace ramop::linear {

SparseMatrix SparseMatrix::identity(Index n) {
  SparseMatrix m;
  m.ncols = n;
  for (Index i = 0; i < n; ++i) m.rows.push_back({{i, Rational(1)}});
  return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<long>>& dense) {
  SparseMatrix m;
  m.ncols = dense.empty() ? 0 : static_cast<Index>(dense.front().size());
  for (const auto& row : dense) {
    SparseVector v;
    for (Index c = 0; c < row.size(); ++c)
      if (row[c] != 0) v.push_back({c, Rational(row[c])});
    m.rows.push_back(std::move(v));
  }
  return m;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t;
  t.ncols = static_cast<Index>(rows.size());
  t.rows.resize(ncols);
  for (Index r = 0; r < rows.size(); ++r)
    for (const auto& e : rows[r]) t.rows[e.col].push_back({r, e.value});
  return t;
}

SparseVector canonical(std::vector<Entry> entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return a.col < b.col; });
  SparseVector out;
  for (auto& e : entries) {
    if (!out.empty() && out.back().col == e.col) {
      out.back().value += e.value;
    } else {
      if (!out.empty() && sgn(out.back().value) == 0) out.pop_back();
      out.push_back(std::move(e));
    }
  }
  if (!out.empty() && sgn(out.back().value) == 0) out.pop_back();
  return out;
}

SparseVector axpy(const SparseVector& a, const Rational& factor, const SparseVector& b) {
  SparseVector out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].col < b[j].col)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].col < a[i].col) {
      out.push_back({b[j].col, factor * b[j].value});
      ++j;
    } else {
      Rational v = a[i].value + factor * b[j].value;
      if (sgn(v) != 0) out.push_back({a[i].col, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVector scaled(const SparseVector& v, const Rational& factor) {
  if (sgn(factor) == 0) return {};
  SparseVector out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back({e.col, e.value * factor});
  return out;
}

bool is_zero(const SparseVector& v) { return v.empty(); }

std::string to_string(const SparseVector& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i].col << ":" << v[i].value.get_str();
  }
  os << "]";
  return os.str();
}

std::optional<std::size_t> Echelon::row_of_pivot(Index col) const {
  auto it = std::lower_bound(pivots.begin(), pivots.end(), col);
  if (it == pivots.end() || *it != col) return std::nullopt;
  return static_cast<std::size_t>(it - pivots.begin());
}

EchelonBuilder::EchelonBuilder(Index ncols) : ncols_(ncols), pivot_row_(ncols, -1) {}

SparseVector EchelonBuilder::reduce(SparseVector v) const {
  // Each row's support starts at its pivot, so sweeping columns upward
  // never reintroduces an entry behind the cursor.
  std::size_t k = 0;
  while (k < v.size()) {
    const auto row = pivot_row_[v[k].col];
    if (row < 0) {
      ++k;
      continue;
    }
    Rational factor = -v[k].value;
    v = axpy(v, factor, rows_[static_cast<std::size_t>(row)]);
  }
  return v;
}

bool EchelonBuilder::add(const SparseVector& v) {
  if (full()) return false;
  SparseVector r = reduce(v);
  if (r.empty()) return false;
  Rational inv = 1 / r.front().value;
  r = scaled(r, inv);
  pivot_row_[r.front().col] = static_cast<std::int64_t>(rows_.size());
  rows_.push_back(std::move(r));
  return true;
}

Echelon EchelonBuilder::finish() && {
  std::vector<std::size_t> order(rows_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return rows_[a].front().col < rows_[b].front().col;
  });

  Echelon e;
  e.ncols = ncols_;
  e.rows.resize(order.size());
  e.pivots.resize(order.size());
  // Back-substitute from the last pivot down; rows with larger pivots are
  // already fully reduced when they are used.
  for (std::size_t pos = order.size(); pos-- > 0;) {
    SparseVector row = std::move(rows_[order[pos]]);
    std::size_t k = 1;
    while (k < row.size()) {
      const auto r = pivot_row_[row[k].col];
      if (r < 0) {
        ++k;
        continue;
      }
      Rational factor = -row[k].value;
      row = axpy(row, factor, rows_[static_cast<std::size_t>(r)]);
    }
    e.pivots[pos] = row.front().col;
    rows_[order[pos]] = row;
    e.rows[pos] = std::move(row);
  }
  rows_.clear();
  std::fill(pivot_row_.begin(), pivot_row_.end(), -1);
  return e;
}

Echelon rref(const SparseMatrix& m) {
  EchelonBuilder b(m.ncols);
  for (const auto& row : m.rows) b.add(row);
  return std::move(b).finish();
}

std::size_t rank(const SparseMatrix& m) { return rref(m).rank(); }

SparseVector reduce(const SparseVector& v, const Echelon& reducer) {
  SparseVector out = v;
  std::size_t k = 0;
  while (k < out.size()) {
    auto row = reducer.row_of_pivot(out[k].col);
    if (!row) {
      ++k;
      continue;
    }
    Rational factor = -out[k].value;
    out = axpy(out, factor, reducer.rows[*row]);
  }
  return out;
}

SparseVector QuotientBasis::coordinates(const SparseVector& v) const {
  SparseVector r = reduce(v, reducer);
  for (auto& e : r) e.col = static_cast<Index>(coord[e.col]);
  return r;
}

QuotientBasis quotient_basis(Echelon reducer) {
  QuotientBasis q;
  q.coord.assign(reducer.ncols, -1);
  std::size_t p = 0;
  for (Index c = 0; c < reducer.ncols; ++c) {
    if (p < reducer.pivots.size() && reducer.pivots[p] == c) {
      ++p;
      continue;
    }
    q.coord[c] = static_cast<std::int64_t>(q.basis.size());
    q.basis.push_back(c);
  }
  q.reducer = std::move(reducer);
  return q;
}

QuotientBasis quotient_basis(const SparseMatrix& span) { return quotient_basis(rref(span)); }

Echelon rref_blockwise(Index ncols, const std::vector<std::size_t>& block,
                       const std::vector<SparseVector>& rows) {
  std::map<std::size_t, std::vector<Index>> cols_of;
  for (Index c = 0; c < ncols; ++c) cols_of[block.at(c)].push_back(c);
  std::vector<std::size_t> keys;
  std::map<std::size_t, std::size_t> key_pos;
  for (const auto& [k, cols] : cols_of) {
    key_pos[k] = keys.size();
    keys.push_back(k);
  }
  std::vector<std::vector<const SparseVector*>> block_rows(keys.size());
  for (const auto& row : rows) {
    if (row.empty()) continue;
    const std::size_t k = block.at(row.front().col);
    for (const auto& e : row)
      if (block.at(e.col) != k) throw std::logic_error("row straddles blocks: " + to_string(row));
    block_rows[key_pos.at(k)].push_back(&row);
  }

  std::vector<Echelon> parts(keys.size());
  parallel_for(keys.size(), [&](std::size_t k) {
    const auto& cols = cols_of.at(keys[k]);
    std::map<Index, Index> local;
    for (Index i = 0; i < cols.size(); ++i) local[cols[i]] = i;
    EchelonBuilder b(static_cast<Index>(cols.size()));
    for (const SparseVector* row : block_rows[k]) {
      if (b.full()) break;
      SparseVector lv;
      lv.reserve(row->size());
      for (const auto& e : *row) lv.push_back({local.at(e.col), e.value});
      b.add(lv);
    }
    Echelon e = std::move(b).finish();
    for (auto& r : e.rows)
      for (auto& entry : r) entry.col = cols[entry.col];
    for (auto& p : e.pivots) p = cols[p];
    parts[k] = std::move(e);
  });

  // Disjoint column supports: sorting the union by pivot gives RREF.
  std::vector<std::pair<Index, SparseVector>> merged;
  for (auto& e : parts)
    for (std::size_t i = 0; i < e.rows.size(); ++i) merged.emplace_back(e.pivots[i], std::move(e.rows[i]));
  std::sort(merged.begin(), merged.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Echelon out;
  out.ncols = ncols;
  for (auto& [p, row] : merged) {
    out.pivots.push_back(p);
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace ramop::linear
