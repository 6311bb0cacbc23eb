#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "faultbasis/errors.hpp"
#include "faultbasis/ratio.hpp"
#include "faultbasis/rng.hpp"
#include "faultbasis/verdict.hpp"

namespace faultbasis {

struct GeneratedTestResult {
  std::string problem_id;
  std::string test_id;
  std::vector<Verdict> correct_verdicts;            // one per sampled correct code
  std::map<std::string, Verdict> wrong_verdicts;    // basis code id -> verdict
};

/// A test counts only if every correct code accepts it; a TLE on a correct
/// code invalidates the test like any other failure.
inline bool is_valid(const GeneratedTestResult& t) {
  if (t.correct_verdicts.empty()) throw NoCorrectCodes();
  return std::all_of(t.correct_verdicts.begin(), t.correct_verdicts.end(),
                     [](Verdict v) { return v == Verdict::AC; });
}

/// Attributed failure of one code across valid tests: none if the code
/// accepts all of them, else the failing verdict of highest precedence
/// (WA before RE before TLE before MLE before CE before OTHER).
inline std::optional<Verdict> is_excluded(const std::string& code_id,
                                          const std::vector<GeneratedTestResult>& valid_tests) {
  std::optional<Verdict> attributed;
  for (const GeneratedTestResult& t : valid_tests) {
    auto it = t.wrong_verdicts.find(code_id);
    if (it == t.wrong_verdicts.end()) throw UnknownCode(code_id);
    const Verdict v = it->second;
    if (v == Verdict::AC) continue;
    if (!attributed || exclusion_precedence(v) < exclusion_precedence(*attributed))
      attributed = v;
  }
  return attributed;
}

/// Fractions of a problem's basis codes by attributed outcome. MLE, CE and
/// OTHER fold into `other`; all five entries sum to 1 exactly.
struct ExclusionBreakdown {
  Ratio ac;
  Ratio wa;
  Ratio re;
  Ratio tle;
  Ratio other;
};

struct ProblemMetrics {
  std::string problem_id;
  Ratio pass_rate;
  Ratio hack_rate;
  ExclusionBreakdown breakdown;
  int tests_total = 0;
  int tests_valid = 0;
  int codes_total = 0;
  int codes_excluded = 0;
};

struct MetricsReport {
  std::vector<ProblemMetrics> problems;
  Ratio macro_pass_rate;
  Ratio macro_hack_rate;
  ExclusionBreakdown macro_breakdown;
};

struct PassRateResult {
  std::vector<std::pair<std::string, Ratio>> per_problem;
  Ratio macro;
};

/// Per problem |valid| / |generated|, zero when nothing was generated;
/// the macro value is the unweighted mean over problems.
inline PassRateResult pass_rate(
    const std::vector<std::pair<std::string, std::vector<GeneratedTestResult>>>& problems) {
  PassRateResult res;
  Ratio sum;
  for (const auto& [problem_id, tests] : problems) {
    Ratio r;
    if (!tests.empty()) {
      long long valid = std::count_if(tests.begin(), tests.end(),
                                      [](const GeneratedTestResult& t) { return is_valid(t); });
      r = Ratio(valid, static_cast<long long>(tests.size()));
    }
    sum += r;
    res.per_problem.emplace_back(problem_id, std::move(r));
  }
  res.macro = problems.empty() ? Ratio() : sum / Ratio(static_cast<long long>(problems.size()));
  return res;
}

struct ProblemTests {
  std::string problem_id;
  std::vector<std::string> basis_code_ids;
  std::vector<GeneratedTestResult> tests;
};

/// Full per-problem and macro metrics: validity, exclusion with its
/// breakdown, and the exact identities ac+wa+re+tle+other = 1 and
/// hack_rate = 1 - ac.
inline MetricsReport hack_rate(const std::vector<ProblemTests>& problems) {
  MetricsReport rep;
  Ratio sum_pass, sum_hack, sum_ac, sum_wa, sum_re, sum_tle, sum_other;
  for (const ProblemTests& p : problems) {
    if (p.basis_code_ids.empty()) throw Error("problem '" + p.problem_id + "' has no basis codes");
    ProblemMetrics pm;
    pm.problem_id = p.problem_id;
    pm.tests_total = static_cast<int>(p.tests.size());
    pm.codes_total = static_cast<int>(p.basis_code_ids.size());

    std::vector<GeneratedTestResult> valid;
    for (const GeneratedTestResult& t : p.tests)
      if (is_valid(t)) valid.push_back(t);
    pm.tests_valid = static_cast<int>(valid.size());
    pm.pass_rate = pm.tests_total == 0 ? Ratio() : Ratio(pm.tests_valid, pm.tests_total);

    long long wa = 0, re = 0, tle = 0, other = 0;
    for (const std::string& code_id : p.basis_code_ids) {
      std::optional<Verdict> v = is_excluded(code_id, valid);
      if (!v) continue;
      ++pm.codes_excluded;
      switch (*v) {
        case Verdict::WA: ++wa; break;
        case Verdict::RE: ++re; break;
        case Verdict::TLE: ++tle; break;
        default: ++other; break;
      }
    }
    const Ratio n(pm.codes_total);
    pm.breakdown.ac = Ratio(pm.codes_total - pm.codes_excluded) / n;
    pm.breakdown.wa = Ratio(wa) / n;
    pm.breakdown.re = Ratio(re) / n;
    pm.breakdown.tle = Ratio(tle) / n;
    pm.breakdown.other = Ratio(other) / n;
    pm.hack_rate = Ratio(pm.codes_excluded) / n;

    sum_pass += pm.pass_rate;
    sum_hack += pm.hack_rate;
    sum_ac += pm.breakdown.ac;
    sum_wa += pm.breakdown.wa;
    sum_re += pm.breakdown.re;
    sum_tle += pm.breakdown.tle;
    sum_other += pm.breakdown.other;
    rep.problems.push_back(std::move(pm));
  }
  if (!problems.empty()) {
    const Ratio q(static_cast<long long>(problems.size()));
    rep.macro_pass_rate = sum_pass / q;
    rep.macro_hack_rate = sum_hack / q;
    rep.macro_breakdown.ac = sum_ac / q;
    rep.macro_breakdown.wa = sum_wa / q;
    rep.macro_breakdown.re = sum_re / q;
    rep.macro_breakdown.tle = sum_tle / q;
    rep.macro_breakdown.other = sum_other / q;
  }
  return rep;
}

/// Min-max normalizes the runtimes, keeps codes at or below `quantile`
/// (all of them when max = min), and samples min(k, eligible) ids without
/// replacement. Output is sorted; the draw depends only on the rng state.
inline std::vector<std::string> select_correct_codes(const std::map<std::string, double>& runtimes,
                                                     const Ratio& quantile, int k,
                                                     SplitMix64& rng) {
  if (runtimes.empty()) throw Error("no correct-code runtimes to sample from");
  if (k < 0) throw Error("negative sample size");
  for (const auto& [id, ms] : runtimes)
    if (!std::isfinite(ms) || ms < 0.0)
      throw Error("runtime of '" + id + "' is not a finite nonnegative number");

  double lo = runtimes.begin()->second, hi = lo;
  for (const auto& [id, ms] : runtimes) {
    lo = std::min(lo, ms);
    hi = std::max(hi, ms);
  }

  std::vector<std::string> eligible;
  if (lo == hi) {
    for (const auto& [id, ms] : runtimes) eligible.push_back(id);
  } else {
    const Ratio span = ratio_from_double(hi) - ratio_from_double(lo);
    for (const auto& [id, ms] : runtimes)
      if (ratio_from_double(ms) - ratio_from_double(lo) <= quantile * span)
        eligible.push_back(id);
  }

  rng.shuffle(eligible);
  const std::size_t take = std::min(eligible.size(), static_cast<std::size_t>(k));
  eligible.resize(take);
  std::sort(eligible.begin(), eligible.end());
  return eligible;
}

}  // namespace faultbasis
