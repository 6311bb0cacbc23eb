#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "faultbasis/errors.hpp"
#include "faultbasis/gf2.hpp"
#include "faultbasis/matrix.hpp"
#include "faultbasis/metrics.hpp"
#include "faultbasis/prefilter.hpp"
#include "faultbasis/records.hpp"
#include "faultbasis/rng.hpp"
#include "faultbasis/wrongselect.hpp"

namespace faultbasis {

struct PipelineConfig {
  FilterConfig filter;
  SearchConfig search;
  Ratio quantile = Ratio(1, 5);
  int correct_k = 8;
  int workers = 1;
};

struct ProblemOutcome {
  std::string problem_id;
  std::optional<FilterReport> filter;       // absent when matrix construction failed
  std::optional<BasisSelection> selection;  // present iff the problem was accepted
  std::vector<int> reduced_columns;
  std::vector<std::string> correct_sample;
  std::optional<std::string> failure;
};

struct PipelineTotals {
  int problems_in = 0;
  int accepted = 0;
  int rejected_all_ones = 0;
  int rejected_low_rank = 0;
  int rejected_too_few = 0;
  int failed = 0;
  long long codes_in = 0;
  long long codes_kept = 0;
  long long codes_dropped = 0;
  long long codes_deduped = 0;
  long long codes_rejected_wholesale = 0;  // rows of problems rejected before row filtering
};

struct PipelineReport {
  std::vector<ProblemOutcome> problems;  // input order
  PipelineTotals totals;
};

/// Column basis of the submatrix formed by the selected rows: at most |I|
/// tests that keep the basis full-rank and its rows pairwise distinct.
inline std::vector<int> reduce_tests(const VerdictMatrix& m, const BasisSelection& sel) {
  VerdictMatrix sub;
  sub.problem_id = m.problem_id;
  sub.width = m.width;
  for (int idx : sel.indices) {
    if (idx < 0 || idx >= m.n()) throw Error("basis row index out of range");
    sub.row_ids.push_back(m.row_ids[static_cast<std::size_t>(idx)]);
    sub.rows.push_back(m.rows[static_cast<std::size_t>(idx)]);
  }
  if (rank(sub) != sub.n()) throw Error("basis rows are not independent");
  if (sub.n() != rank(m)) throw Error("basis size differs from the matrix rank");
  return column_basis(sub);
}

namespace detail {

inline ProblemOutcome run_problem(const ProblemBundle& b, const PipelineConfig& cfg) {
  ProblemOutcome out;
  out.problem_id = b.problem_id;
  try {
    const VerdictMatrix m = build_matrix(b.problem_id, b.wrong);
    FilterResult fr = prefilter_problem(m, cfg.filter);
    out.filter = std::move(fr.report);
    if (fr.matrix) {
      SearchConfig sc = cfg.search;
      sc.seed = derive_seed(cfg.search.seed, b.problem_id);
      auto [sel, trace] = wrong_select(*fr.matrix, sc);
      (void)trace;
      out.reduced_columns = reduce_tests(*fr.matrix, sel);
      out.selection = std::move(sel);
      if (!b.correct.empty()) {
        std::map<std::string, double> runtimes;
        for (const auto& [id, ms] : b.correct) runtimes.emplace(id, ms);
        SplitMix64 crng(derive_seed(sc.seed, "correct-sample"));
        out.correct_sample = select_correct_codes(runtimes, cfg.quantile, cfg.correct_k, crng);
      }
    }
  } catch (const Error& e) {
    // Module errors mark the problem failed without touching the corpus;
    // logic_error escapes, it means the library itself is broken.
    out.selection.reset();
    out.reduced_columns.clear();
    out.correct_sample.clear();
    out.failure = e.what();
  }
  return out;
}

}  // namespace detail

/// Runs filter -> select -> reduce -> correct-code sampling per problem.
/// All randomness is derived from (seed, problem_id), so the worker count
/// changes scheduling only, never any result.
inline PipelineReport run_pipeline(const std::vector<ProblemBundle>& bundles,
                                   const PipelineConfig& cfg) {
  if (cfg.workers < 1) throw Error("worker count must be positive");
  {
    std::set<std::string> ids;
    for (const ProblemBundle& b : bundles)
      if (!ids.insert(b.problem_id).second)
        throw Error("duplicate problem id '" + b.problem_id + "'");
  }

  PipelineReport rep;
  rep.problems.resize(bundles.size());
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(cfg.workers), std::max<std::size_t>(bundles.size(), 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < bundles.size(); ++i)
      rep.problems[i] = detail::run_problem(bundles[i], cfg);
  } else {
    std::atomic<std::size_t> cursor{0};
    std::atomic<bool> poisoned{false};
    std::exception_ptr first_error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        try {
          for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= bundles.size() || poisoned.load()) return;
            rep.problems[i] = detail::run_problem(bundles[i], cfg);
          }
        } catch (...) {
          std::scoped_lock lock(error_mu);
          if (!first_error) first_error = std::current_exception();
          poisoned.store(true);
        }
      });
    }
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  PipelineTotals& tot = rep.totals;
  tot.problems_in = static_cast<int>(rep.problems.size());
  for (const ProblemOutcome& out : rep.problems) {
    if (out.failure) {
      ++tot.failed;
    } else {
      switch (out.filter->outcome) {
        case FilterOutcome::Accepted: ++tot.accepted; break;
        case FilterOutcome::RejectedAllOnesColumn: ++tot.rejected_all_ones; break;
        case FilterOutcome::RejectedLowRank: ++tot.rejected_low_rank; break;
        case FilterOutcome::RejectedTooFewRows: ++tot.rejected_too_few; break;
      }
    }
    if (!out.filter) continue;
    const FilterReport& f = *out.filter;
    tot.codes_in += f.rows_in;
    if (f.outcome == FilterOutcome::RejectedAllOnesColumn) {
      tot.codes_rejected_wholesale += f.rows_in;
      continue;
    }
    tot.codes_kept += f.rows_kept;
    tot.codes_dropped += static_cast<long long>(f.dropped_rows.size());
    for (const auto& [kept, removed] : f.dedup_groups)
      tot.codes_deduped += static_cast<long long>(removed.size());
  }
  return rep;
}

}  // namespace faultbasis
