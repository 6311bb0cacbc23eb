#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "faultbasis/diversity.hpp"
#include "faultbasis/errors.hpp"
#include "faultbasis/gf2.hpp"
#include "faultbasis/matrix.hpp"
#include "faultbasis/ratio.hpp"
#include "faultbasis/rng.hpp"

namespace faultbasis {

struct SearchConfig {
  int restarts = 1000;
  int steps = 1000;
  std::uint64_t seed = 0;
  bool early_stop_on_zero = true;
};

enum class StopReason { Converged, StepBudget, ZeroDiversity };

inline const char* to_string(StopReason s) noexcept {
  switch (s) {
    case StopReason::Converged: return "converged";
    case StopReason::StepBudget: return "step_budget";
    case StopReason::ZeroDiversity: return "zero_diversity";
  }
  return "unknown";
}

/// One restart's history: scores[0] is the initial basis diversity and each
/// later entry follows one accepted swap, so the sequence is strictly
/// decreasing and steps() == scores.size() - 1.
struct RestartRecord {
  int restart_index = 0;
  std::vector<Ratio> scores;
  StopReason stop = StopReason::Converged;
  int steps() const noexcept { return static_cast<int>(scores.size()) - 1; }
};

struct SearchTrace {
  std::vector<RestartRecord> restarts;
  int best_restart = -1;
};

struct BasisSelection {
  std::string problem_id;
  std::vector<int> indices;  // ascending row indices into the matrix
  std::vector<std::string> code_ids;
  Ratio score;  // average pairwise similarity of the selected basis
  int rank = 0;
  int restarts_used = 0;
};

/// Shuffles the rows uniformly and keeps each one that grows the rank.
inline std::vector<int> random_basis(const VerdictMatrix& m, SplitMix64& rng) {
  std::vector<int> order(static_cast<std::size_t>(m.n()));
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  Gf2Eliminator elim(m.width);
  std::vector<int> picked;
  for (int idx : order)
    if (elim.insert(m.rows[static_cast<std::size_t>(idx)])) picked.push_back(idx);
  std::sort(picked.begin(), picked.end());
  return picked;
}

struct Swap {
  int out = -1;        // row index leaving the basis
  int in = -1;         // row index entering
  Ratio pair_sum;      // total pairwise similarity after the swap
};

namespace detail {

inline Ratio basis_pair_sum(const VerdictMatrix& m, const std::vector<int>& idx) {
  Ratio s(0);
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b)
      s += jaccard(m.rows[static_cast<std::size_t>(idx[a])],
                   m.rows[static_cast<std::size_t>(idx[b])]);
  return s;
}

/// Partial products are themselves binomials, so they never decrease and
/// the early exit at cap+1 is sound.
inline std::uint64_t binomial_capped(int n, int k, std::uint64_t cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace detail

/// Best admissible swap: over all pairs (out in I, in outside I) whose
/// exchange keeps the set independent, the one minimizing the new total
/// pairwise similarity, ties broken by smallest (out, in). Empty when no
/// swap is a strict improvement.
inline std::optional<Swap> best_neighbor(const VerdictMatrix& m, const std::vector<int>& basis) {
  if (basis.empty()) return std::nullopt;
  std::vector<char> member(static_cast<std::size_t>(m.n()), 0);
  for (int idx : basis) member.at(static_cast<std::size_t>(idx)) = 1;

  std::vector<Ratio> rowsum(basis.size(), Ratio(0));
  Ratio total(0);
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = a + 1; b < basis.size(); ++b) {
      Ratio j = jaccard(m.rows[static_cast<std::size_t>(basis[a])],
                        m.rows[static_cast<std::size_t>(basis[b])]);
      rowsum[a] += j;
      rowsum[b] += j;
      total += j;
    }

  // Independence probe per leaving row: the span of the rest of the basis.
  std::vector<Gf2Eliminator> without;
  without.reserve(basis.size());
  for (std::size_t a = 0; a < basis.size(); ++a) {
    Gf2Eliminator e(m.width);
    for (std::size_t b = 0; b < basis.size(); ++b)
      if (b != a) e.insert(m.rows[static_cast<std::size_t>(basis[b])]);
    without.push_back(std::move(e));
  }

  std::optional<Swap> best;
  std::vector<Ratio> jin(basis.size(), Ratio(0));
  for (int in = 0; in < m.n(); ++in) {
    if (member[static_cast<std::size_t>(in)]) continue;
    const Signature& rin = m.rows[static_cast<std::size_t>(in)];
    Ratio sum_in(0);
    for (std::size_t a = 0; a < basis.size(); ++a) {
      jin[a] = jaccard(rin, m.rows[static_cast<std::size_t>(basis[a])]);
      sum_in += jin[a];
    }
    for (std::size_t a = 0; a < basis.size(); ++a) {
      if (without[a].in_span(rin)) continue;  // swap would drop the rank
      Ratio cand = total - rowsum[a] + (sum_in - jin[a]);
      if (!(cand < total)) continue;
      const int out = basis[a];
      if (!best || cand < best->pair_sum ||
          (cand == best->pair_sum &&
           std::pair(out, in) < std::pair(best->out, best->in)))
        best = Swap{out, in, std::move(cand)};
    }
  }
  return best;
}

struct LocalSearchResult {
  std::vector<int> indices;
  Ratio score;
  StopReason stop = StopReason::Converged;
  std::vector<Ratio> scores;  // same contract as RestartRecord::scores
  int steps() const noexcept { return static_cast<int>(scores.size()) - 1; }
};

/// Best-improvement descent from `start`, spending at most max_steps
/// accepted swaps. `start` must be an independent set of row indices.
inline LocalSearchResult local_search(const VerdictMatrix& m, std::vector<int> start,
                                      int max_steps, bool early_stop_on_zero) {
  if (max_steps < 0) throw Error("negative step budget");
  LocalSearchResult res;
  res.indices = std::move(start);
  std::sort(res.indices.begin(), res.indices.end());
  const long long k = static_cast<long long>(res.indices.size());
  const Ratio pairs(k >= 2 ? k * (k - 1) / 2 : 1);
  res.scores.push_back(detail::basis_pair_sum(m, res.indices) / pairs);
  while (true) {
    if (early_stop_on_zero && res.scores.back() == Ratio(0)) {
      res.stop = StopReason::ZeroDiversity;
      break;
    }
    if (res.steps() >= max_steps) {
      res.stop = StopReason::StepBudget;
      break;
    }
    std::optional<Swap> sw = best_neighbor(m, res.indices);
    if (!sw) {
      res.stop = StopReason::Converged;
      break;
    }
    *std::find(res.indices.begin(), res.indices.end(), sw->out) = sw->in;
    std::sort(res.indices.begin(), res.indices.end());
    res.scores.push_back(sw->pair_sum / pairs);
  }
  res.score = res.scores.back();
  return res;
}

/// Minimizes average pairwise similarity over row bases of m: `restarts`
/// independently seeded random starts, each descended by best-improvement
/// swaps. Ties keep the earliest restart; a zero-diversity basis ends the
/// search when early_stop_on_zero is set.
inline std::pair<BasisSelection, SearchTrace> wrong_select(const VerdictMatrix& m,
                                                           const SearchConfig& cfg) {
  if (m.n() == 0) throw Error("basis selection on an empty matrix");
  if (cfg.restarts < 1) throw Error("restarts must be positive");
  if (cfg.steps < 1) throw Error("step budget must be positive");
  const int target = rank(m);

  SearchTrace trace;
  std::optional<Ratio> best_score;
  std::vector<int> best_idx;
  int executed = 0;
  for (int e = 0; e < cfg.restarts; ++e) {
    SplitMix64 rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(e)));
    LocalSearchResult r =
        local_search(m, random_basis(m, rng), cfg.steps, cfg.early_stop_on_zero);
    RestartRecord rec;
    rec.restart_index = e;
    rec.scores = std::move(r.scores);
    rec.stop = r.stop;
    trace.restarts.push_back(std::move(rec));
    ++executed;
    if (!best_score || r.score < *best_score) {
      best_score = r.score;
      best_idx = std::move(r.indices);
      trace.best_restart = e;
    }
    if (cfg.early_stop_on_zero && *best_score == Ratio(0)) break;
  }

  // The selection is recomputed from scratch before being returned; a
  // mismatch means the incremental bookkeeping above is broken.
  if (static_cast<int>(best_idx.size()) != target)
    throw std::logic_error("selected basis size differs from the matrix rank");
  std::vector<Signature> chosen;
  chosen.reserve(best_idx.size());
  for (int idx : best_idx) chosen.push_back(m.rows.at(static_cast<std::size_t>(idx)));
  if (rank(chosen, m.width) != target)
    throw std::logic_error("selected basis is not independent");
  if (avg_diversity(m, best_idx) != *best_score)
    throw std::logic_error("selection score does not match its basis");

  BasisSelection sel;
  sel.problem_id = m.problem_id;
  sel.indices = std::move(best_idx);
  for (int idx : sel.indices) sel.code_ids.push_back(m.row_ids.at(static_cast<std::size_t>(idx)));
  sel.score = *best_score;
  sel.rank = target;
  sel.restarts_used = executed;
  return {std::move(sel), std::move(trace)};
}

/// Exhaustive optimum over all independent subsets of size rank(m),
/// visited in lexicographic order so ties keep the smallest index set.
/// Refuses instances with more than `cap` candidate subsets.
inline BasisSelection brute_force_best_basis(const VerdictMatrix& m,
                                             std::uint64_t cap = 2'000'000) {
  if (m.n() == 0) throw Error("basis selection on an empty matrix");
  const int n = m.n();
  const int k = rank(m);
  if (detail::binomial_capped(n, k, cap) > cap)
    throw TooLarge("subset count exceeds the exhaustive-search cap");

  std::vector<int> comb(static_cast<std::size_t>(k));
  std::iota(comb.begin(), comb.end(), 0);
  std::optional<Ratio> best;
  std::vector<int> best_idx;
  while (true) {
    Gf2Eliminator elim(m.width);
    bool independent = true;
    for (int idx : comb)
      if (!elim.insert(m.rows[static_cast<std::size_t>(idx)])) {
        independent = false;
        break;
      }
    if (independent) {
      Ratio f = avg_diversity(m, comb);
      if (!best || f < *best) {
        best = f;
        best_idx = comb;
      }
    }
    int i = k - 1;
    while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++comb[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
  }

  BasisSelection sel;
  sel.problem_id = m.problem_id;
  sel.indices = std::move(best_idx);
  for (int idx : sel.indices) sel.code_ids.push_back(m.row_ids.at(static_cast<std::size_t>(idx)));
  sel.score = *best;
  sel.rank = k;
  sel.restarts_used = 0;
  return sel;
}

}  // namespace faultbasis
