#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "faultbasis/faultbasis.hpp"

namespace {

using namespace faultbasis;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string in;
  std::string out;
  std::string matrix_out;
  std::string report;
  std::string format = "records";
  std::string tau = "0.8";
  std::string quantile = "0.2";
  std::string overlap_bias = "0.5";
  std::string rows;
  std::uint64_t seed = 0;
  int min_rank = 5;
  int restarts = 1000;
  int steps = 1000;
  int workers = 1;
  int correct_k = 8;
  int problems = 1;
  int planted_rank = 6;
  int dep_rows = 4;
  int noise_rows = 2;
  int d = 24;
  int correct_codes = 12;
  bool no_early_stop = false;
};

Ratio parse_unit_fraction(const std::string& text, const char* what) {
  Ratio r;
  try {
    r = parse_decimal(text);
  } catch (const Error& e) {
    throw UsageError(std::string(what) + ": " + e.what());
  }
  if (r < Ratio(0) || r > Ratio(1))
    throw UsageError(std::string(what) + " must lie in [0, 1], got " + text);
  return r;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw Error("cannot open '" + out_path + "' for writing");
  f << content;
  f.flush();
  if (!f) throw Error("failed writing '" + out_path + "'");
}

std::string padded_id(const char* prefix, std::size_t index, std::size_t total,
                      std::size_t min_width) {
  std::size_t digits = 1;
  for (std::size_t v = total > 0 ? total - 1 : 0; v >= 10; v /= 10) ++digits;
  if (digits < min_width) digits = min_width;
  const std::string num = std::to_string(index);
  return prefix + std::string(digits > num.size() ? digits - num.size() : 0, '0') + num;
}

Verdict draw_failing_verdict(SplitMix64& rng) {
  const std::uint64_t u = rng.next_below(100);
  if (u < 70) return Verdict::WA;
  if (u < 85) return Verdict::RE;
  if (u < 95) return Verdict::TLE;
  if (u < 97) return Verdict::MLE;
  if (u < 99) return Verdict::CE;
  return Verdict::OTHER;
}

SearchConfig make_search_config(const Options& o) {
  SearchConfig sc;
  sc.restarts = o.restarts;
  sc.steps = o.steps;
  sc.seed = o.seed;
  sc.early_stop_on_zero = !o.no_early_stop;
  return sc;
}

std::vector<VerdictMatrix> load_matrices(const Options& o) {
  const std::string content = detail::read_text_file(o.in);
  if (content.empty()) throw ParseError(1, "empty input");
  if (content.front() == '{') {
    std::vector<VerdictMatrix> out;
    for (const ProblemBundle& b : parse_bundles(content))
      out.push_back(build_matrix(b.problem_id, b.wrong));
    return out;
  }
  return parse_matrices(content);
}

void run_synth(const Options& o) {
  std::string out;
  for (int i = 0; i < o.problems; ++i) {
    SynthSpec spec;
    spec.problem_id = padded_id("p", static_cast<std::size_t>(i),
                                static_cast<std::size_t>(o.problems), 4);
    spec.planted_rank = o.planted_rank;
    spec.extra_dependent_rows = o.dep_rows;
    spec.noise_rows = o.noise_rows;
    spec.d = o.d;
    spec.overlap_bias = parse_unit_fraction(o.overlap_bias, "--overlap-bias");
    spec.seed = derive_seed(o.seed, spec.problem_id);
    const SynthResult sr = synth(spec);

    if (o.format == "text") {
      out += format_matrix(sr.matrix);
      continue;
    }
    ProblemBundle b;
    b.problem_id = spec.problem_id;
    SplitMix64 vrng(derive_seed(spec.seed, "verdicts"));
    for (int r = 0; r < sr.matrix.n(); ++r) {
      std::vector<Verdict> verdicts;
      verdicts.reserve(static_cast<std::size_t>(sr.matrix.d()));
      for (int c = 0; c < sr.matrix.d(); ++c)
        verdicts.push_back(sr.matrix.rows[static_cast<std::size_t>(r)].test(c)
                               ? draw_failing_verdict(vrng)
                               : Verdict::AC);
      b.wrong.emplace_back(sr.matrix.row_ids[static_cast<std::size_t>(r)], std::move(verdicts));
    }
    SplitMix64 rrng(derive_seed(spec.seed, "runtimes"));
    for (int c = 0; c < o.correct_codes; ++c)
      b.correct.emplace_back(
          padded_id("c", static_cast<std::size_t>(c), static_cast<std::size_t>(o.correct_codes), 3),
          static_cast<double>(50 + rrng.next_below(2000)));
    out += format_bundle_records({b});
  }
  emit(o.out, out);
}

void run_filter(const Options& o) {
  FilterConfig fc;
  fc.tau = parse_unit_fraction(o.tau, "--tau");
  fc.min_rank = o.min_rank;
  std::vector<FilterReport> reports;
  std::string kept_text;
  for (const VerdictMatrix& m : load_matrices(o)) {
    FilterResult fr = prefilter_problem(m, fc);
    if (fr.matrix && !o.matrix_out.empty()) kept_text += format_matrix(*fr.matrix);
    reports.push_back(std::move(fr.report));
  }
  emit(o.out, o.format == "text" ? format_filter_text(reports) : format_filter_records(reports));
  if (!o.matrix_out.empty()) emit(o.matrix_out, kept_text);
}

void run_select(const Options& o) {
  std::vector<BasisSelection> sels;
  for (const VerdictMatrix& m : load_matrices(o)) {
    SearchConfig sc = make_search_config(o);
    sc.seed = derive_seed(o.seed, m.problem_id);
    sels.push_back(wrong_select(m, sc).first);
  }
  emit(o.out, o.format == "text" ? format_selection_text(sels) : format_selection_records(sels));
}

std::vector<std::string> split_ids(const std::string& csv) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const std::size_t comma = csv.find(',', pos);
    const std::size_t end = comma == std::string::npos ? csv.size() : comma;
    const std::string id = csv.substr(pos, end - pos);
    if (id.empty()) throw UsageError("--rows contains an empty code id");
    out.push_back(id);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

void run_reduce_tests(const Options& o) {
  const std::vector<VerdictMatrix> matrices = load_matrices(o);
  std::vector<std::pair<std::string, std::pair<std::vector<std::string>, std::vector<int>>>> reduced;
  if (!o.rows.empty()) {
    if (matrices.size() != 1)
      throw UsageError("--rows applies to a single-problem input, got " +
                       std::to_string(matrices.size()) + " problems");
    const VerdictMatrix& m = matrices.front();
    BasisSelection sel;
    sel.problem_id = m.problem_id;
    for (const std::string& id : split_ids(o.rows)) {
      const auto it = std::find(m.row_ids.begin(), m.row_ids.end(), id);
      if (it == m.row_ids.end()) throw UnknownCode(id);
      sel.indices.push_back(static_cast<int>(it - m.row_ids.begin()));
      sel.code_ids.push_back(id);
    }
    sel.rank = static_cast<int>(sel.indices.size());
    reduced.emplace_back(m.problem_id,
                         std::make_pair(sel.code_ids, reduce_tests(m, sel)));
  } else {
    for (const VerdictMatrix& m : matrices) {
      SearchConfig sc = make_search_config(o);
      sc.seed = derive_seed(o.seed, m.problem_id);
      const BasisSelection sel = wrong_select(m, sc).first;
      reduced.emplace_back(m.problem_id, std::make_pair(sel.code_ids, reduce_tests(m, sel)));
    }
  }
  emit(o.out, o.format == "text" ? format_reduced_text(reduced) : format_reduced_records(reduced));
}

void run_metrics(const Options& o) {
  const std::vector<GeneratedTestResult> tests = read_test_records(o.in);
  std::vector<std::string> order;
  std::map<std::string, std::vector<GeneratedTestResult>> by_problem;
  for (const GeneratedTestResult& t : tests) {
    if (!by_problem.count(t.problem_id)) order.push_back(t.problem_id);
    by_problem[t.problem_id].push_back(t);
  }

  std::vector<ProblemTests> problems;
  if (!o.report.empty()) {
    const auto bases = parse_pipeline_bases(detail::read_text_file(o.report));
    std::set<std::string> known;
    for (const auto& [problem_id, codes] : bases) {
      known.insert(problem_id);
      ProblemTests pt;
      pt.problem_id = problem_id;
      pt.basis_code_ids = codes;
      if (const auto it = by_problem.find(problem_id); it != by_problem.end())
        pt.tests = it->second;
      problems.push_back(std::move(pt));
    }
    for (const std::string& problem_id : order)
      if (!known.count(problem_id))
        throw Error("test records reference problem '" + problem_id +
                    "' absent from the report");
  } else {
    for (const std::string& problem_id : order) {
      ProblemTests pt;
      pt.problem_id = problem_id;
      std::set<std::string> ids;
      for (const GeneratedTestResult& t : by_problem[problem_id])
        for (const auto& [code_id, v] : t.wrong_verdicts) ids.insert(code_id);
      if (ids.empty())
        throw Error("problem '" + problem_id +
                    "' carries no wrong-code verdicts; pass --report to supply its basis");
      pt.basis_code_ids.assign(ids.begin(), ids.end());
      pt.tests = by_problem[problem_id];
      problems.push_back(std::move(pt));
    }
  }

  const MetricsReport rep = hack_rate(problems);
  emit(o.out, o.format == "text" ? format_metrics_text(rep) : format_metrics_records(rep));
}

void run_pipeline_cmd(const Options& o) {
  PipelineConfig cfg;
  cfg.filter.tau = parse_unit_fraction(o.tau, "--tau");
  cfg.filter.min_rank = o.min_rank;
  cfg.search = make_search_config(o);
  cfg.quantile = parse_unit_fraction(o.quantile, "--quantile");
  cfg.correct_k = o.correct_k;
  cfg.workers = o.workers;
  const PipelineReport rep = run_pipeline(ingest(o.in), cfg);
  emit(o.out, o.format == "text" ? format_pipeline_text(rep) : format_pipeline_records(rep));
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Diagnostic-basis construction and test-quality metrics over code-test verdict matrices"};
  app.require_subcommand(1);

  const auto add_io = [&](CLI::App* cmd, bool in_required) {
    if (in_required)
      cmd->add_option("--in", o.in, "Input file")->required();
    cmd->add_option("--out", o.out, "Output file (default: stdout)");
    cmd->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"text", "records"}))
        ->capture_default_str();
  };
  const auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", o.seed, "Master RNG seed")
        ->envname("FAULTBASIS_SEED")
        ->capture_default_str();
  };
  const auto add_search = [&](CLI::App* cmd) {
    cmd->add_option("--restarts", o.restarts, "Random restarts per problem")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--steps", o.steps, "Step budget per restart")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_flag("--no-early-stop", o.no_early_stop,
                  "Keep searching after a zero-diversity basis is found");
    add_seed(cmd);
  };
  const auto add_filter = [&](CLI::App* cmd) {
    cmd->add_option("--tau", o.tau, "Failure-rate threshold; rows strictly above it are dropped")
        ->capture_default_str();
    cmd->add_option("--min-rank", o.min_rank, "Minimum rank for a problem to be kept")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
  };

  CLI::App* filter_cmd = app.add_subcommand(
      "filter", "Pre-filter matrices: all-ones columns, trivial rows, duplicates, low rank");
  add_io(filter_cmd, true);
  add_filter(filter_cmd);
  filter_cmd->add_option("--matrix-out", o.matrix_out, "Write accepted filtered matrices here");

  CLI::App* select_cmd =
      app.add_subcommand("select", "Select a maximally diverse basis per matrix");
  add_io(select_cmd, true);
  add_search(select_cmd);

  CLI::App* reduce_cmd = app.add_subcommand(
      "reduce-tests", "Reduce each matrix to the basis-distinguishing test columns");
  add_io(reduce_cmd, true);
  add_search(reduce_cmd);
  reduce_cmd->add_option("--rows", o.rows,
                         "Comma-separated basis code ids (single-problem input only)");

  CLI::App* metrics_cmd =
      app.add_subcommand("metrics", "PassRate / HackRate over generated-test records");
  add_io(metrics_cmd, true);
  metrics_cmd->add_option("--report", o.report,
                          "Pipeline records file supplying each problem's basis");

  CLI::App* synth_cmd = app.add_subcommand("synth", "Generate synthetic planted corpora");
  add_io(synth_cmd, false);
  add_seed(synth_cmd);
  synth_cmd->add_option("--problems", o.problems, "Number of problems")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth_cmd->add_option("--planted-rank", o.planted_rank, "Disjoint planted rows per problem")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth_cmd->add_option("--dep-rows", o.dep_rows, "Extra dependent rows per problem")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  synth_cmd->add_option("--noise-rows", o.noise_rows, "Random nonzero rows per problem")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  synth_cmd->add_option("--d", o.d, "Test columns per problem")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth_cmd->add_option("--overlap-bias", o.overlap_bias,
                        "Planted-row inclusion probability for dependent rows")
      ->capture_default_str();
  synth_cmd->add_option("--correct-codes", o.correct_codes,
                        "Correct codes per problem (records format only)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  CLI::App* pipeline_cmd = app.add_subcommand(
      "pipeline", "Full run: ingest, filter, select, reduce, sample correct codes");
  add_io(pipeline_cmd, true);
  add_filter(pipeline_cmd);
  add_search(pipeline_cmd);
  pipeline_cmd->add_option("--workers", o.workers, "Worker threads over problems")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  pipeline_cmd->add_option("--quantile", o.quantile, "Normalized-runtime cutoff for correct codes")
      ->capture_default_str();
  pipeline_cmd->add_option("--correct-k", o.correct_k, "Correct codes sampled per problem")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*filter_cmd) run_filter(o);
    else if (*select_cmd) run_select(o);
    else if (*reduce_cmd) run_reduce_tests(o);
    else if (*metrics_cmd) run_metrics(o);
    else if (*synth_cmd) run_synth(o);
    else if (*pipeline_cmd) run_pipeline_cmd(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "internal invariant violation: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
