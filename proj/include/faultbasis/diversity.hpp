#pragma once

#include <span>

#include "faultbasis/errors.hpp"
#include "faultbasis/matrix.hpp"
#include "faultbasis/ratio.hpp"
#include "faultbasis/signature.hpp"

namespace faultbasis {

/// Jaccard similarity of two failure signatures: jointly failed tests over
/// tests failed by either. 1 iff the nonzero rows are equal, 0 iff their
/// supports are disjoint. Undefined (BothEmpty) for two all-zero rows.
inline Ratio jaccard(const Signature& a, const Signature& b) {
  const int inter = a.and_popcount(b);  // checks widths
  const int uni = a.popcount() + b.popcount() - inter;
  if (uni == 0) throw BothEmpty();
  return Ratio(inter, uni);
}

/// Mean pairwise Jaccard similarity over all unordered pairs; the diversity
/// objective (lower = more diverse). Defined as 0 for fewer than two rows.
inline Ratio avg_diversity(std::span<const Signature> rows) {
  const std::size_t k = rows.size();
  if (k <= 1) return Ratio(0);
  Ratio sum(0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      sum += jaccard(rows[i], rows[j]);
    }
  }
  return sum / Ratio(static_cast<long long>(k) * (static_cast<long long>(k) - 1) / 2);
}

inline Ratio avg_diversity(const VerdictMatrix& m, std::span<const int> indices) {
  std::vector<Signature> rows;
  rows.reserve(indices.size());
  for (int i : indices) rows.push_back(m.rows.at(static_cast<std::size_t>(i)));
  return avg_diversity(rows);
}

}  // namespace faultbasis
