#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "airy/rational.hpp"

namespace airy {

/// Sparse vector as (column, value) pairs, strictly increasing columns, no zeros.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

namespace detail {

// a - f*b for sorted sparse rows.
inline SparseRow axpy(const SparseRow& a, const Rational& f, const SparseRow& b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, -(f * b[j].second));
      ++j;
    } else {
      Rational v = a[i].second - f * b[j].second;
      if (!v.is_zero()) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace detail

/// Incremental row echelon form. Pivot = leftmost nonzero column; the pivot
/// set depends only on the row space, not on the insertion order.
class SparseEchelon {
 public:
  explicit SparseEchelon(std::size_t cols) : cols_(cols), pivot_row_(cols, kNone) {}

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }
  bool has_pivot(std::size_t col) const { return pivot_row_.at(col) != kNone; }

  /// Adds a row to the span. Returns false when it was already in the span.
  bool insert(SparseRow r) {
    while (!r.empty()) {
      const std::size_t c = r.front().first;
      if (c >= cols_) throw std::out_of_range("SparseEchelon: column index out of range");
      const std::size_t p = pivot_row_[c];
      if (p == kNone) {
        const Rational inv = Rational(1) / r.front().second;
        for (auto& [col, v] : r) v *= inv;
        pivot_row_[c] = rows_.size();
        rows_.push_back(std::move(r));
        return true;
      }
      const Rational f = r.front().second;
      r = detail::axpy(r, f, rows_[p]);
    }
    return false;
  }

  /// Normal form of v modulo the span: the unique representative supported on
  /// non-pivot columns.
  SparseRow reduce(const SparseRow& v) const {
    std::map<std::size_t, Rational> acc(v.begin(), v.end());
    auto it = acc.begin();
    while (it != acc.end()) {
      const std::size_t col = it->first;
      const std::size_t p = pivot_row_.at(col);
      if (p == kNone) {
        ++it;
        continue;
      }
      const Rational f = it->second;
      for (const auto& [c2, v2] : rows_[p]) {
        auto [slot, inserted] = acc.try_emplace(c2, Rational(0));
        slot->second -= f * v2;
        if (slot->second.is_zero() && c2 != col) acc.erase(slot);
      }
      acc.erase(col);
      it = acc.lower_bound(col + 1);
    }
    return SparseRow(acc.begin(), acc.end());
  }

  std::vector<std::size_t> pivots() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < cols_; ++c)
      if (pivot_row_[c] != kNone) out.push_back(c);
    return out;
  }

  /// Rows of the reduced row echelon form, ordered by pivot column.
  std::vector<SparseRow> reduced_rows() const {
    std::vector<SparseRow> out;
    out.reserve(rows_.size());
    for (std::size_t c = 0; c < cols_; ++c) {
      const std::size_t p = pivot_row_[c];
      if (p == kNone) continue;
      SparseRow tail(rows_[p].begin() + 1, rows_[p].end());
      SparseRow row{{c, Rational(1)}};
      for (auto& e : reduce(tail)) row.push_back(std::move(e));
      out.push_back(std::move(row));
    }
    return out;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::size_t cols_;
  std::vector<std::size_t> pivot_row_;
  std::vector<SparseRow> rows_;
};

/// Sparse matrix over Q. Stored entries are nonzero and in bounds.
class RationalMatrix {
 public:
  RationalMatrix(std::size_t rows, std::size_t cols) : cols_(cols), data_(rows) {}

  static RationalMatrix from_dense(const std::vector<std::vector<Rational>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    RationalMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("RationalMatrix: ragged rows");
      for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
  }
  static RationalMatrix identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, Rational(1));
    return m;
  }

  std::size_t rows() const { return data_.size(); }
  std::size_t cols() const { return cols_; }

  Rational at(std::size_t i, std::size_t j) const {
    check(i, j);
    auto it = data_[i].find(j);
    return it == data_[i].end() ? Rational(0) : it->second;
  }
  void set(std::size_t i, std::size_t j, Rational v) {
    check(i, j);
    if (v.is_zero())
      data_[i].erase(j);
    else
      data_[i][j] = std::move(v);
  }

  SparseRow row(std::size_t i) const { return SparseRow(data_.at(i).begin(), data_.at(i).end()); }
  void set_row(std::size_t i, const SparseRow& r) {
    data_.at(i).clear();
    for (const auto& [j, v] : r) set(i, j, v);
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
  }

  RationalMatrix transpose() const {
    RationalMatrix t(cols_, rows());
    for (std::size_t i = 0; i < rows(); ++i)
      for (const auto& [j, v] : data_[i]) t.set(j, i, v);
    return t;
  }

  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check(std::size_t i, std::size_t j) const {
    if (i >= data_.size() || j >= cols_) throw std::out_of_range("RationalMatrix: index out of range");
  }
  std::size_t cols_;
  std::vector<std::map<std::size_t, Rational>> data_;
};

struct RowReduction {
  RationalMatrix echelon;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

/// Reduced row echelon form. Nonzero rows first, ordered by pivot column.
inline RowReduction row_reduce(const RationalMatrix& m) {
  SparseEchelon ech(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) ech.insert(m.row(i));
  RowReduction out{RationalMatrix(m.rows(), m.cols()), ech.pivots(), ech.rank()};
  const auto rows = ech.reduced_rows();
  for (std::size_t i = 0; i < rows.size(); ++i) out.echelon.set_row(i, rows[i]);
  return out;
}

inline std::size_t rank(const RationalMatrix& m) { return row_reduce(m).rank; }

/// Basis of (target space)/(column span): standard vectors e_i at the rows of
/// `m` that are not pivots of the reduced transpose.
inline std::vector<std::vector<Rational>> cokernel_basis(const RationalMatrix& m) {
  const auto red = row_reduce(m.transpose());
  std::vector<bool> pivot(m.rows(), false);
  for (auto c : red.pivots) pivot[c] = true;
  std::vector<std::vector<Rational>> out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (pivot[i]) continue;
    std::vector<Rational> e(m.rows(), Rational(0));
    e[i] = Rational(1);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace airy
