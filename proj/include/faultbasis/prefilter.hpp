#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "faultbasis/gf2.hpp"
#include "faultbasis/matrix.hpp"
#include "faultbasis/ratio.hpp"

namespace faultbasis {

struct FilterConfig {
  Ratio tau = Ratio(4, 5);  // keep rows with failure rate <= tau
  int min_rank = 5;
};

enum class FilterOutcome {
  Accepted,
  RejectedAllOnesColumn,
  RejectedLowRank,
  RejectedTooFewRows,
};

inline const char* to_string(FilterOutcome o) noexcept {
  switch (o) {
    case FilterOutcome::Accepted: return "accepted";
    case FilterOutcome::RejectedAllOnesColumn: return "rejected_all_ones_column";
    case FilterOutcome::RejectedLowRank: return "rejected_low_rank";
    case FilterOutcome::RejectedTooFewRows: return "rejected_too_few_rows";
  }
  return "unknown";
}

/// Audit trail of one problem's filtering: every input row is accounted for
/// as kept, dropped by failure rate, or merged into a duplicate group.
struct FilterReport {
  std::string problem_id;
  FilterOutcome outcome = FilterOutcome::Accepted;
  std::vector<int> all_ones_columns;      // columns that triggered rejection
  std::vector<int> post_filter_all_ones;  // warning only: created by row drops
  std::vector<std::pair<std::string, Ratio>> dropped_rows;
  std::vector<std::pair<std::string, std::vector<std::string>>> dedup_groups;
  int rank_before = 0;
  int rank_after = 0;
  int rows_in = 0;
  int rows_kept = 0;
};

struct FilterResult {
  std::optional<VerdictMatrix> matrix;  // present iff outcome == Accepted
  FilterReport report;
};

/// Columns failed by every row.
inline std::vector<int> all_ones_columns(const VerdictMatrix& m) {
  std::vector<int> out;
  if (m.rows.empty()) return out;
  for (int j = 0; j < m.d(); ++j) {
    bool all = true;
    for (const Signature& r : m.rows) {
      if (!r.test(j)) {
        all = false;
        break;
      }
    }
    if (all) out.push_back(j);
  }
  return out;
}

/// Fraction of tests the row fails.
inline Ratio row_failure_rate(const Signature& r) {
  if (r.width() == 0) throw Error("failure rate of a zero-width signature");
  return Ratio(r.popcount(), r.width());
}

/// Problem-level, code-level and quality filtering, in that fixed order:
///   1. reject the problem if the original matrix has an all-ones column;
///   2. drop rows whose failure rate strictly exceeds tau (boundary kept);
///   3. merge identical remaining rows, recording multiplicities;
///   4. reject if fewer than min_rank rows remain, then if rank < min_rank.
/// Row drops can create new all-ones columns; those are reported as a
/// warning without rejecting, since the column check is a single pass.
inline FilterResult prefilter_problem(const VerdictMatrix& m, const FilterConfig& cfg) {
  FilterResult res;
  FilterReport& rep = res.report;
  rep.problem_id = m.problem_id;
  rep.rows_in = m.n();
  rep.rank_before = rank(m);
  rep.rank_after = rep.rank_before;

  if (m.n() == 0) {
    rep.outcome = FilterOutcome::RejectedTooFewRows;
    rep.rank_after = 0;
    return res;
  }

  rep.all_ones_columns = all_ones_columns(m);
  if (!rep.all_ones_columns.empty()) {
    rep.outcome = FilterOutcome::RejectedAllOnesColumn;
    return res;
  }

  VerdictMatrix kept;
  kept.problem_id = m.problem_id;
  kept.width = m.width;
  std::map<std::string, std::size_t> group_of;  // signature text -> dedup slot
  for (int i = 0; i < m.n(); ++i) {
    const Signature& row = m.rows[static_cast<std::size_t>(i)];
    const std::string& code_id = m.row_ids[static_cast<std::size_t>(i)];
    const Ratio rate = row_failure_rate(row);
    if (rate > cfg.tau) {
      rep.dropped_rows.emplace_back(code_id, rate);
      continue;
    }
    const std::string key = row.to_string();
    if (auto it = group_of.find(key); it != group_of.end()) {
      rep.dedup_groups[it->second].second.push_back(code_id);
      continue;
    }
    group_of.emplace(key, rep.dedup_groups.size());
    rep.dedup_groups.emplace_back(code_id, std::vector<std::string>{});
    kept.row_ids.push_back(code_id);
    kept.rows.push_back(row);
  }
  rep.rows_kept = kept.n();

  if (kept.n() < cfg.min_rank) {
    rep.outcome = FilterOutcome::RejectedTooFewRows;
    rep.rank_after = rank(kept);
    return res;
  }
  rep.rank_after = rank(kept);
  if (rep.rank_after < cfg.min_rank) {
    rep.outcome = FilterOutcome::RejectedLowRank;
    return res;
  }

  rep.post_filter_all_ones = all_ones_columns(kept);
  rep.outcome = FilterOutcome::Accepted;
  res.matrix = std::move(kept);
  return res;
}

}  // namespace faultbasis
