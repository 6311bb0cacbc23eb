#pragma once

#include <algorithm>
#include <span>
#include <utility>
#include <vector>

#include "faultbasis/matrix.hpp"
#include "faultbasis/signature.hpp"

namespace faultbasis {

/// Incremental GF(2) row reduction. Keeps one reduced row per pivot column
/// (the row's leftmost set bit), so rank and span-membership queries are a
/// single reduction pass.
class Gf2Eliminator {
public:
  explicit Gf2Eliminator(int width) : width_(width) {}

  /// Reduces `row` against the stored rows; stores the remainder if it is
  /// nonzero. Returns true when the rank grew.
  bool insert(Signature row) {
    if (!reduce(row)) return false;
    const int pivot = row.leading_column();
    const auto at = std::lower_bound(
        rows_.begin(), rows_.end(), pivot,
        [](const auto& entry, int p) { return entry.first < p; });
    rows_.insert(at, {pivot, std::move(row)});
    return true;
  }

  /// True when `row` is a GF(2) combination of the inserted rows.
  bool in_span(Signature row) const {
    if (row.width() != width_) throw WidthMismatch(width_, row.width());
    return !reduce(row);
  }

  int rank() const noexcept { return static_cast<int>(rows_.size()); }

  int width() const noexcept { return width_; }

  /// Pivot columns in ascending order. These index a column set whose
  /// restriction of the inserted rows has the same rank; the set depends
  /// only on the row space, not on insertion order.
  std::vector<int> pivot_columns() const {
    std::vector<int> out;
    out.reserve(rows_.size());
    for (const auto& [pivot, row] : rows_) out.push_back(pivot);
    return out;
  }

private:
  // Reduces in place; returns false when the row vanished (dependent).
  bool reduce(Signature& row) const {
    if (row.width() != width_) throw WidthMismatch(width_, row.width());
    for (;;) {
      const int lead = row.leading_column();
      if (lead < 0) return false;
      const auto at = std::lower_bound(
          rows_.begin(), rows_.end(), lead,
          [](const auto& entry, int p) { return entry.first < p; });
      if (at == rows_.end() || at->first != lead) return true;
      row ^= at->second;
    }
  }

  int width_;
  std::vector<std::pair<int, Signature>> rows_;  // ascending pivot order
};

inline int rank(std::span<const Signature> rows, int width) {
  Gf2Eliminator elim(width);
  for (const Signature& r : rows) elim.insert(r);
  return elim.rank();
}

/// GF(2) row rank; invariant under row permutation and duplication.
inline int rank(const VerdictMatrix& m) {
  return rank(std::span<const Signature>(m.rows), m.width);
}

/// True when r is a GF(2) linear combination of `rows` (the empty
/// combination counts, so the zero vector is always in span).
inline bool in_span(const Signature& r, std::span<const Signature> rows) {
  const int width = rows.empty() ? r.width() : rows.front().width();
  Gf2Eliminator elim(width);
  for (const Signature& row : rows) elim.insert(row);
  return elim.in_span(r);
}

/// Column indices selected by leftmost-pivot elimination: exactly rank(m)
/// of them, and restricting all rows to them preserves the rank.
inline std::vector<int> column_basis(const VerdictMatrix& m) {
  Gf2Eliminator elim(m.width);
  for (const Signature& r : m.rows) elim.insert(r);
  return elim.pivot_columns();
}

}  // namespace faultbasis
