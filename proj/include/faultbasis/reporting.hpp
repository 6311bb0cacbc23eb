#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "faultbasis/errors.hpp"
#include "faultbasis/metrics.hpp"
#include "faultbasis/pipeline.hpp"
#include "faultbasis/prefilter.hpp"
#include "faultbasis/ratio.hpp"
#include "faultbasis/records.hpp"
#include "faultbasis/wrongselect.hpp"

namespace faultbasis {

/// Every fraction is emitted both ways: exact ("frac") and display-rounded
/// to two percent decimals ("pct").
inline nlohmann::ordered_json ratio_json(const Ratio& r) {
  nlohmann::ordered_json j;
  j["frac"] = to_fraction_string(r);
  j["pct"] = to_percent_string(r);
  return j;
}

inline nlohmann::ordered_json filter_report_json(const FilterReport& rep) {
  nlohmann::ordered_json j;
  j["outcome"] = to_string(rep.outcome);
  j["rows_in"] = rep.rows_in;
  j["rows_kept"] = rep.rows_kept;
  j["rank_before"] = rep.rank_before;
  j["rank_after"] = rep.rank_after;
  j["all_ones_columns"] = rep.all_ones_columns;
  j["post_filter_all_ones"] = rep.post_filter_all_ones;
  nlohmann::ordered_json dropped = nlohmann::ordered_json::array();
  for (const auto& [code, rate] : rep.dropped_rows) {
    nlohmann::ordered_json entry;
    entry["code"] = code;
    entry["rate"] = ratio_json(rate);
    dropped.push_back(std::move(entry));
  }
  j["dropped"] = std::move(dropped);
  nlohmann::ordered_json dedup = nlohmann::ordered_json::array();
  for (const auto& [kept, removed] : rep.dedup_groups) {
    if (removed.empty()) continue;
    nlohmann::ordered_json entry;
    entry["kept"] = kept;
    entry["removed"] = removed;
    dedup.push_back(std::move(entry));
  }
  j["dedup"] = std::move(dedup);
  return j;
}

inline nlohmann::ordered_json selection_json(const BasisSelection& sel) {
  nlohmann::ordered_json j;
  j["rank"] = sel.rank;
  j["score"] = ratio_json(sel.score);
  j["indices"] = sel.indices;
  j["codes"] = sel.code_ids;
  j["restarts_used"] = sel.restarts_used;
  return j;
}

inline std::string format_filter_records(const std::vector<FilterReport>& reports) {
  std::string out;
  for (const FilterReport& rep : reports) {
    nlohmann::ordered_json j;
    j["record"] = "filter";
    j["problem"] = rep.problem_id;
    j.update(filter_report_json(rep));
    out += j.dump();
    out += '\n';
  }
  return out;
}

inline std::string format_filter_text(const std::vector<FilterReport>& reports) {
  std::string out;
  for (const FilterReport& rep : reports) {
    out += "problem " + rep.problem_id + ": " + to_string(rep.outcome);
    out += " rows " + std::to_string(rep.rows_in) + " -> " + std::to_string(rep.rows_kept);
    out += " rank " + std::to_string(rep.rank_before) + " -> " + std::to_string(rep.rank_after);
    out += " dropped " + std::to_string(rep.dropped_rows.size());
    long long deduped = 0;
    for (const auto& [kept, removed] : rep.dedup_groups)
      deduped += static_cast<long long>(removed.size());
    out += " deduped " + std::to_string(deduped);
    if (!rep.all_ones_columns.empty()) {
      out += " all-ones-columns";
      for (int c : rep.all_ones_columns) out += ' ' + std::to_string(c);
    }
    out += '\n';
  }
  return out;
}

inline std::string format_selection_records(const std::vector<BasisSelection>& sels) {
  std::string out;
  for (const BasisSelection& sel : sels) {
    nlohmann::ordered_json j;
    j["record"] = "selection";
    j["problem"] = sel.problem_id;
    j.update(selection_json(sel));
    out += j.dump();
    out += '\n';
  }
  return out;
}

inline std::string format_selection_text(const std::vector<BasisSelection>& sels) {
  std::string out;
  for (const BasisSelection& sel : sels) {
    out += "problem " + sel.problem_id + ": rank " + std::to_string(sel.rank);
    out += " score " + to_fraction_string(sel.score) + " (" + to_percent_string(sel.score) + "%)";
    out += " basis";
    for (const std::string& code : sel.code_ids) out += ' ' + code;
    out += " restarts " + std::to_string(sel.restarts_used);
    out += '\n';
  }
  return out;
}

inline nlohmann::ordered_json problem_outcome_json(const ProblemOutcome& out) {
  nlohmann::ordered_json j;
  j["record"] = "problem";
  j["problem"] = out.problem_id;
  j["filter"] = out.filter ? filter_report_json(*out.filter) : nlohmann::ordered_json(nullptr);
  j["selection"] = out.selection ? selection_json(*out.selection) : nlohmann::ordered_json(nullptr);
  j["reduced_columns"] = out.reduced_columns;
  j["correct_sample"] = out.correct_sample;
  j["failure"] = out.failure ? nlohmann::ordered_json(*out.failure) : nlohmann::ordered_json(nullptr);
  return j;
}

inline std::string format_pipeline_records(const PipelineReport& rep) {
  std::string out;
  for (const ProblemOutcome& p : rep.problems) {
    out += problem_outcome_json(p).dump();
    out += '\n';
  }
  nlohmann::ordered_json t;
  t["record"] = "totals";
  t["problems_in"] = rep.totals.problems_in;
  t["accepted"] = rep.totals.accepted;
  t["rejected_all_ones_column"] = rep.totals.rejected_all_ones;
  t["rejected_low_rank"] = rep.totals.rejected_low_rank;
  t["rejected_too_few_rows"] = rep.totals.rejected_too_few;
  t["failed"] = rep.totals.failed;
  t["codes_in"] = rep.totals.codes_in;
  t["codes_kept"] = rep.totals.codes_kept;
  t["codes_dropped"] = rep.totals.codes_dropped;
  t["codes_deduped"] = rep.totals.codes_deduped;
  t["codes_rejected_wholesale"] = rep.totals.codes_rejected_wholesale;
  out += t.dump();
  out += '\n';
  return out;
}

inline std::string format_pipeline_text(const PipelineReport& rep) {
  std::string out;
  for (const ProblemOutcome& p : rep.problems) {
    out += "problem " + p.problem_id + ": ";
    if (p.failure) {
      out += "failed (" + *p.failure + ")";
    } else if (!p.selection) {
      out += to_string(p.filter->outcome);
    } else {
      out += "accepted rank " + std::to_string(p.selection->rank);
      out += " score " + to_fraction_string(p.selection->score) + " (" +
             to_percent_string(p.selection->score) + "%)";
      out += " basis";
      for (const std::string& code : p.selection->code_ids) out += ' ' + code;
      out += " reduced-tests " + std::to_string(p.reduced_columns.size());
      out += " correct-sample " + std::to_string(p.correct_sample.size());
    }
    out += '\n';
  }
  const PipelineTotals& t = rep.totals;
  out += "totals: problems " + std::to_string(t.problems_in) + " accepted " +
         std::to_string(t.accepted) + " rejected-all-ones " + std::to_string(t.rejected_all_ones) +
         " rejected-low-rank " + std::to_string(t.rejected_low_rank) + " rejected-too-few " +
         std::to_string(t.rejected_too_few) + " failed " + std::to_string(t.failed) + "\n";
  out += "totals: codes " + std::to_string(t.codes_in) + " kept " + std::to_string(t.codes_kept) +
         " dropped " + std::to_string(t.codes_dropped) + " deduped " +
         std::to_string(t.codes_deduped) + " rejected-wholesale " +
         std::to_string(t.codes_rejected_wholesale) + "\n";
  return out;
}

inline nlohmann::ordered_json breakdown_json(const ExclusionBreakdown& b) {
  nlohmann::ordered_json j;
  j["ac"] = ratio_json(b.ac);
  j["wa"] = ratio_json(b.wa);
  j["re"] = ratio_json(b.re);
  j["tle"] = ratio_json(b.tle);
  j["other"] = ratio_json(b.other);
  return j;
}

inline std::string format_metrics_records(const MetricsReport& rep) {
  std::string out;
  for (const ProblemMetrics& p : rep.problems) {
    nlohmann::ordered_json j;
    j["record"] = "problem_metrics";
    j["problem"] = p.problem_id;
    j["pass_rate"] = ratio_json(p.pass_rate);
    j["hack_rate"] = ratio_json(p.hack_rate);
    j["breakdown"] = breakdown_json(p.breakdown);
    j["tests_total"] = p.tests_total;
    j["tests_valid"] = p.tests_valid;
    j["codes_total"] = p.codes_total;
    j["codes_excluded"] = p.codes_excluded;
    out += j.dump();
    out += '\n';
  }
  nlohmann::ordered_json j;
  j["record"] = "macro_metrics";
  j["problems"] = static_cast<long long>(rep.problems.size());
  j["pass_rate"] = ratio_json(rep.macro_pass_rate);
  j["hack_rate"] = ratio_json(rep.macro_hack_rate);
  j["breakdown"] = breakdown_json(rep.macro_breakdown);
  out += j.dump();
  out += '\n';
  return out;
}

inline std::string format_metrics_text(const MetricsReport& rep) {
  std::string out;
  for (const ProblemMetrics& p : rep.problems) {
    out += "problem " + p.problem_id + ": pass " + to_percent_string(p.pass_rate) + "% hack " +
           to_percent_string(p.hack_rate) + "% (ac " + to_percent_string(p.breakdown.ac) +
           "% wa " + to_percent_string(p.breakdown.wa) + "% re " +
           to_percent_string(p.breakdown.re) + "% tle " + to_percent_string(p.breakdown.tle) +
           "% other " + to_percent_string(p.breakdown.other) + "%)";
    out += " tests " + std::to_string(p.tests_valid) + "/" + std::to_string(p.tests_total);
    out += " excluded " + std::to_string(p.codes_excluded) + "/" + std::to_string(p.codes_total);
    out += '\n';
  }
  out += "macro over " + std::to_string(rep.problems.size()) + " problems: pass " +
         to_percent_string(rep.macro_pass_rate) + "% hack " +
         to_percent_string(rep.macro_hack_rate) + "% (ac " +
         to_percent_string(rep.macro_breakdown.ac) + "% wa " +
         to_percent_string(rep.macro_breakdown.wa) + "% re " +
         to_percent_string(rep.macro_breakdown.re) + "% tle " +
         to_percent_string(rep.macro_breakdown.tle) + "% other " +
         to_percent_string(rep.macro_breakdown.other) + "%)\n";
  return out;
}

inline std::string format_reduced_records(
    const std::vector<std::pair<std::string, std::pair<std::vector<std::string>, std::vector<int>>>>&
        reduced) {
  std::string out;
  for (const auto& [problem, payload] : reduced) {
    nlohmann::ordered_json j;
    j["record"] = "reduced_tests";
    j["problem"] = problem;
    j["basis_codes"] = payload.first;
    j["columns"] = payload.second;
    out += j.dump();
    out += '\n';
  }
  return out;
}

inline std::string format_reduced_text(
    const std::vector<std::pair<std::string, std::pair<std::vector<std::string>, std::vector<int>>>>&
        reduced) {
  std::string out;
  for (const auto& [problem, payload] : reduced) {
    out += "problem " + problem + ": columns";
    for (int c : payload.second) out += ' ' + std::to_string(c);
    out += " (basis";
    for (const std::string& code : payload.first) out += ' ' + code;
    out += ")\n";
  }
  return out;
}

/// Reads back a pipeline records file: the accepted problems with their
/// selected basis code ids, in file order. Input to the metrics command.
inline std::vector<std::pair<std::string, std::vector<std::string>>> parse_pipeline_bases(
    const std::string& content) {
  std::vector<std::pair<std::string, std::vector<std::string>>> out;
  detail::for_each_record_line(content, [&](const std::string& line, std::size_t lineno) {
    const nlohmann::json j = detail::parse_record_object(line, lineno);
    const auto rec = j.find("record");
    if (rec == j.end() || !rec->is_string())
      throw ParseError(lineno, "missing record type");
    if (rec->get_ref<const std::string&>() != "problem") return;
    const std::string problem = detail::require_id(j, "problem", lineno);
    const auto sel = j.find("selection");
    if (sel == j.end()) throw ParseError(lineno, "missing field 'selection'");
    if (sel->is_null()) return;
    if (!sel->is_object()) throw ParseError(lineno, "field 'selection' must be an object");
    const auto codes = sel->find("codes");
    if (codes == sel->end() || !codes->is_array())
      throw ParseError(lineno, "selection must carry a 'codes' array");
    std::vector<std::string> ids;
    for (const nlohmann::json& c : *codes) {
      if (!c.is_string() || c.get_ref<const std::string&>().empty())
        throw ParseError(lineno, "basis code ids must be nonempty strings");
      ids.push_back(c.get<std::string>());
    }
    out.emplace_back(problem, std::move(ids));
  });
  return out;
}

}  // namespace faultbasis
