#pragma once

// Reference implementations used only by tests. They recompute everything
// from first principles (subset enumeration, materialized neighbor sets,
// direct formula evaluation) so the library under test never verifies
// itself. Inputs are bit strings and plain containers, capped at 64
// columns, which covers every fixture in the suite.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "faultbasis/metrics.hpp"
#include "faultbasis/ratio.hpp"
#include "faultbasis/verdict.hpp"

namespace oracle {

inline std::uint64_t mask_of(const std::string& bits) {
  if (bits.size() > 64) throw std::runtime_error("oracle supports at most 64 columns");
  std::uint64_t m = 0;
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j] == '1')
      m |= std::uint64_t{1} << j;
    else if (bits[j] != '0')
      throw std::runtime_error("oracle rows must be 0/1 strings");
  }
  return m;
}

inline std::vector<std::uint64_t> masks_of(const std::vector<std::string>& rows) {
  std::vector<std::uint64_t> out;
  out.reserve(rows.size());
  for (const std::string& r : rows) out.push_back(mask_of(r));
  return out;
}

/// A set of rows is independent iff no nonempty subset XORs to zero.
inline bool independent(const std::vector<std::uint64_t>& rows) {
  if (rows.size() > 20) throw std::runtime_error("oracle independence cap exceeded");
  const unsigned n = static_cast<unsigned>(rows.size());
  for (unsigned t = 1; t < (1u << n); ++t) {
    std::uint64_t x = 0;
    for (unsigned i = 0; i < n; ++i)
      if (t & (1u << i)) x ^= rows[i];
    if (x == 0) return false;
  }
  return true;
}

/// Rank by enumerating every subset and keeping the largest independent one.
inline int rank(const std::vector<std::string>& rows) {
  if (rows.size() > 16) throw std::runtime_error("oracle rank cap exceeded");
  const unsigned n = static_cast<unsigned>(rows.size());
  const std::vector<std::uint64_t> masks = masks_of(rows);
  int best = 0;
  for (unsigned s = 0; s < (1u << n); ++s) {
    std::vector<std::uint64_t> subset;
    for (unsigned i = 0; i < n; ++i)
      if (s & (1u << i)) subset.push_back(masks[i]);
    if (independent(subset)) best = std::max(best, static_cast<int>(subset.size()));
  }
  return best;
}

/// Span membership by enumerating every subset XOR.
inline bool in_span(const std::string& target, const std::vector<std::string>& rows) {
  if (rows.size() > 20) throw std::runtime_error("oracle span cap exceeded");
  const std::uint64_t want = mask_of(target);
  const unsigned n = static_cast<unsigned>(rows.size());
  const std::vector<std::uint64_t> masks = masks_of(rows);
  for (unsigned s = 0; s < (1u << n); ++s) {
    std::uint64_t x = 0;
    for (unsigned i = 0; i < n; ++i)
      if (s & (1u << i)) x ^= masks[i];
    if (x == want) return true;
  }
  return false;
}

inline faultbasis::Ratio jaccard(std::uint64_t a, std::uint64_t b) {
  const int inter = std::popcount(a & b);
  const int uni = std::popcount(a) + std::popcount(b) - inter;
  if (uni == 0) throw std::runtime_error("oracle jaccard of two empty sets");
  return faultbasis::Ratio(inter, uni);
}

inline faultbasis::Ratio avg_diversity(const std::vector<std::uint64_t>& rows) {
  if (rows.size() < 2) return faultbasis::Ratio(0);
  faultbasis::Ratio sum(0);
  long long pairs = 0;
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = a + 1; b < rows.size(); ++b) {
      sum += jaccard(rows[a], rows[b]);
      ++pairs;
    }
  return sum / faultbasis::Ratio(pairs);
}

inline faultbasis::Ratio avg_diversity(const std::vector<std::string>& rows) {
  return avg_diversity(masks_of(rows));
}

struct RefSearchResult {
  std::vector<int> indices;
  faultbasis::Ratio score;
  std::vector<faultbasis::Ratio> scores;
};

/// Materialized-neighborhood best-improvement descent: every (out, in)
/// neighbor is built outright and its independence re-derived by subset
/// enumeration. Same descent contract as the library (strict improvement,
/// smallest (out, in) on ties, zero / budget / convergence stops).
inline RefSearchResult reference_local_search(const std::vector<std::string>& rows,
                                              std::vector<int> start, int max_steps,
                                              bool early_stop_on_zero) {
  const std::vector<std::uint64_t> masks = masks_of(rows);
  const int n = static_cast<int>(rows.size());
  std::sort(start.begin(), start.end());

  const auto pick = [&](const std::vector<int>& idx) {
    std::vector<std::uint64_t> out;
    for (int i : idx) out.push_back(masks.at(static_cast<std::size_t>(i)));
    return out;
  };

  RefSearchResult res;
  res.indices = std::move(start);
  res.scores.push_back(avg_diversity(pick(res.indices)));
  int steps = 0;
  while (true) {
    if (early_stop_on_zero && res.scores.back() == faultbasis::Ratio(0)) break;
    if (steps >= max_steps) break;
    std::optional<faultbasis::Ratio> best_f;
    std::pair<int, int> best_swap{-1, -1};
    std::vector<int> best_set;
    for (int out : res.indices) {
      for (int in = 0; in < n; ++in) {
        if (std::find(res.indices.begin(), res.indices.end(), in) != res.indices.end()) continue;
        std::vector<int> cand;
        for (int i : res.indices)
          if (i != out) cand.push_back(i);
        cand.push_back(in);
        std::sort(cand.begin(), cand.end());
        if (!independent(pick(cand))) continue;
        const faultbasis::Ratio f = avg_diversity(pick(cand));
        if (!(f < res.scores.back())) continue;
        if (!best_f || f < *best_f ||
            (f == *best_f && std::pair(out, in) < best_swap)) {
          best_f = f;
          best_swap = {out, in};
          best_set = cand;
        }
      }
    }
    if (!best_f) break;
    res.indices = best_set;
    res.scores.push_back(*best_f);
    ++steps;
  }
  res.score = res.scores.back();
  return res;
}

struct NaiveProblemMetrics {
  faultbasis::Ratio pass, hack, ac, wa, re, tle, other;
};

/// Direct evaluation of the metric formulas with its own precedence table.
inline NaiveProblemMetrics naive_metrics(
    const std::vector<std::string>& basis_ids,
    const std::vector<faultbasis::GeneratedTestResult>& tests) {
  using faultbasis::Ratio;
  using faultbasis::Verdict;
  NaiveProblemMetrics m;

  std::vector<const faultbasis::GeneratedTestResult*> valid;
  for (const auto& t : tests) {
    bool ok = !t.correct_verdicts.empty();
    for (Verdict v : t.correct_verdicts)
      if (v != Verdict::AC) ok = false;
    if (ok) valid.push_back(&t);
  }
  m.pass = tests.empty() ? Ratio(0)
                         : Ratio(static_cast<long long>(valid.size()),
                                 static_cast<long long>(tests.size()));

  const std::map<Verdict, int> precedence{{Verdict::WA, 0},  {Verdict::RE, 1},
                                          {Verdict::TLE, 2}, {Verdict::MLE, 3},
                                          {Verdict::CE, 4},  {Verdict::OTHER, 5}};
  long long excluded = 0, wa = 0, re = 0, tle = 0, other = 0;
  for (const std::string& code : basis_ids) {
    std::optional<Verdict> attributed;
    for (const auto* t : valid) {
      const Verdict v = t->wrong_verdicts.at(code);
      if (v == Verdict::AC) continue;
      if (!attributed || precedence.at(v) < precedence.at(*attributed)) attributed = v;
    }
    if (!attributed) continue;
    ++excluded;
    if (*attributed == Verdict::WA)
      ++wa;
    else if (*attributed == Verdict::RE)
      ++re;
    else if (*attributed == Verdict::TLE)
      ++tle;
    else
      ++other;
  }
  const Ratio n(static_cast<long long>(basis_ids.size()));
  m.hack = Ratio(excluded) / n;
  m.ac = Ratio(static_cast<long long>(basis_ids.size()) - excluded) / n;
  m.wa = Ratio(wa) / n;
  m.re = Ratio(re) / n;
  m.tle = Ratio(tle) / n;
  m.other = Ratio(other) / n;
  return m;
}

}  // namespace oracle
