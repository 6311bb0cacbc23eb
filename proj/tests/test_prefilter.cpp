#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "faultbasis/matrix.hpp"
#include "faultbasis/prefilter.hpp"
#include "faultbasis/signature.hpp"

using faultbasis::FilterConfig;
using faultbasis::FilterOutcome;
using faultbasis::FilterResult;
using faultbasis::Ratio;
using faultbasis::Signature;
using faultbasis::VerdictMatrix;

namespace {

VerdictMatrix matrix_of(const std::vector<std::pair<std::string, std::string>>& rows, int d) {
  VerdictMatrix m;
  m.problem_id = "t";
  m.width = d;
  for (const auto& [id, bits] : rows) {
    m.row_ids.push_back(id);
    m.rows.push_back(Signature::from_string(bits));
  }
  return m;
}

FilterConfig lenient() {
  FilterConfig cfg;
  cfg.min_rank = 1;
  return cfg;
}

}  // namespace

TEST_CASE("all_ones_columns finds exactly the universally failed tests") {
  CHECK(faultbasis::all_ones_columns(matrix_of({{"a", "101"}, {"b", "111"}}, 3)) ==
        std::vector<int>{0, 2});
  CHECK(faultbasis::all_ones_columns(matrix_of({{"a", "101"}, {"b", "110"}}, 3)) ==
        std::vector<int>{0});
  CHECK(faultbasis::all_ones_columns(matrix_of({{"a", "100"}, {"b", "011"}}, 3)).empty());
  CHECK(faultbasis::all_ones_columns(matrix_of({}, 3)).empty());
}

TEST_CASE("row failure rate is an exact fraction") {
  CHECK(faultbasis::row_failure_rate(Signature::from_string("10010")) == Ratio(2, 5));
  CHECK(faultbasis::row_failure_rate(Signature::from_string("1111111111")) == Ratio(1));
  CHECK(faultbasis::row_failure_rate(Signature::from_string("00001")) == Ratio(1, 5));
}

TEST_CASE("a problem with an all-ones column is rejected before any row filtering") {
  // Column 1 fails everywhere; the 1111 row would also exceed tau, but the
  // column rejection is decided on the original matrix.
  const VerdictMatrix m = matrix_of({{"a", "1111"}, {"b", "0100"}, {"c", "0110"}}, 4);
  const FilterResult res = faultbasis::prefilter_problem(m, lenient());
  CHECK(res.report.outcome == FilterOutcome::RejectedAllOnesColumn);
  CHECK(res.report.all_ones_columns == std::vector<int>{1});
  CHECK_FALSE(res.matrix.has_value());
  CHECK(res.report.dropped_rows.empty());
}

TEST_CASE("rows strictly above tau are dropped and the boundary row is kept") {
  // d = 5, tau = 4/5: 11110 sits exactly on the boundary, 11111 is above it.
  const VerdictMatrix m = matrix_of(
      {{"boundary", "11110"}, {"above", "11111"}, {"low", "10000"}, {"mid", "01100"}}, 5);
  const FilterResult res = faultbasis::prefilter_problem(m, lenient());
  REQUIRE(res.report.outcome == FilterOutcome::Accepted);
  REQUIRE(res.matrix.has_value());
  CHECK(res.matrix->row_ids == std::vector<std::string>{"boundary", "low", "mid"});
  REQUIRE(res.report.dropped_rows.size() == 1);
  CHECK(res.report.dropped_rows[0].first == "above");
  CHECK(res.report.dropped_rows[0].second == Ratio(1));
}

TEST_CASE("tau is compared exactly, not through floating point") {
  FilterConfig cfg = lenient();
  cfg.tau = Ratio(1, 3);
  // 1/3 of 9 tests: exactly at the boundary.
  const VerdictMatrix m = matrix_of({{"at", "111000000"}, {"over", "000111100"},
                                     {"under", "100100000"}}, 9);
  const FilterResult res = faultbasis::prefilter_problem(m, cfg);
  REQUIRE(res.matrix.has_value());
  CHECK(res.matrix->row_ids == std::vector<std::string>{"at", "under"});
}

TEST_CASE("identical rows are merged and multiplicities recorded") {
  const VerdictMatrix m = matrix_of(
      {{"a", "1010"}, {"b", "1010"}, {"c", "0101"}, {"d", "1010"}, {"e", "0011"}}, 4);
  const FilterResult res = faultbasis::prefilter_problem(m, lenient());
  REQUIRE(res.matrix.has_value());
  CHECK(res.matrix->row_ids == std::vector<std::string>{"a", "c", "e"});
  bool found = false;
  for (const auto& [kept, removed] : res.report.dedup_groups) {
    if (kept == "a") {
      found = true;
      CHECK(removed == std::vector<std::string>{"b", "d"});
    } else {
      CHECK(removed.empty());
    }
  }
  CHECK(found);
  CHECK(res.report.rows_in == 5);
  CHECK(res.report.rows_kept == 3);
}

TEST_CASE("too few rows and low rank are distinct rejections") {
  FilterConfig cfg;
  cfg.min_rank = 3;

  // Two rows cannot reach rank 3.
  const FilterResult few =
      faultbasis::prefilter_problem(matrix_of({{"a", "100"}, {"b", "010"}}, 3), cfg);
  CHECK(few.report.outcome == FilterOutcome::RejectedTooFewRows);

  // Four rows, but rank 2.
  const FilterResult low = faultbasis::prefilter_problem(
      matrix_of({{"a", "110"}, {"b", "011"}, {"c", "101"}, {"d", "110"}}, 3), cfg);
  CHECK(low.report.outcome == FilterOutcome::RejectedLowRank);
  CHECK(low.report.rank_after == 2);

  // Duplicates removed by dedup count against the row minimum.
  const FilterResult dedup_few = faultbasis::prefilter_problem(
      matrix_of({{"a", "110"}, {"b", "110"}, {"c", "110"}, {"d", "001"}}, 3), cfg);
  CHECK(dedup_few.report.outcome == FilterOutcome::RejectedTooFewRows);
  CHECK(dedup_few.report.rows_kept == 2);
}

TEST_CASE("an empty problem is rejected for too few rows") {
  const FilterResult res = faultbasis::prefilter_problem(matrix_of({}, 3), lenient());
  CHECK(res.report.outcome == FilterOutcome::RejectedTooFewRows);
}

TEST_CASE("row drops surface newly universal columns as a warning, not a rejection") {
  // Column 0: every row fails it except the trivial row that tau removes
  // (5/6 > 4/5, and its column-0 zero blocks the original all-ones check).
  const VerdictMatrix m = matrix_of(
      {{"triv", "011111"}, {"a", "110000"}, {"b", "101000"}, {"c", "100100"}}, 6);
  CHECK(faultbasis::all_ones_columns(m).empty());
  const FilterResult res = faultbasis::prefilter_problem(m, lenient());
  REQUIRE(res.report.outcome == FilterOutcome::Accepted);
  CHECK(res.report.post_filter_all_ones == std::vector<int>{0});
}

TEST_CASE("filtering an accepted output again changes nothing") {
  const VerdictMatrix m = matrix_of({{"boundary", "11110"},
                                     {"above", "11111"},
                                     {"a", "10000"},
                                     {"b", "10000"},
                                     {"c", "01100"},
                                     {"d", "00011"}}, 5);
  FilterConfig cfg = lenient();
  const FilterResult first = faultbasis::prefilter_problem(m, cfg);
  REQUIRE(first.matrix.has_value());
  const FilterResult second = faultbasis::prefilter_problem(*first.matrix, cfg);
  REQUIRE(second.matrix.has_value());
  CHECK(second.report.outcome == FilterOutcome::Accepted);
  CHECK(second.report.dropped_rows.empty());
  for (const auto& [kept, removed] : second.report.dedup_groups) CHECK(removed.empty());
  CHECK(second.matrix->row_ids == first.matrix->row_ids);
  CHECK(second.matrix->rows == first.matrix->rows);
}

TEST_CASE("default config keeps problems at rank five and rejects below") {
  const FilterConfig cfg;  // tau 4/5, min_rank 5
  CHECK(cfg.tau == Ratio(4, 5));
  CHECK(cfg.min_rank == 5);

  const VerdictMatrix rank5 = matrix_of({{"a", "10000"},
                                         {"b", "01000"},
                                         {"c", "00100"},
                                         {"d", "00010"},
                                         {"e", "00001"}}, 5);
  CHECK(faultbasis::prefilter_problem(rank5, cfg).report.outcome == FilterOutcome::Accepted);

  const VerdictMatrix rank4 = matrix_of({{"a", "10000"},
                                         {"b", "01000"},
                                         {"c", "00100"},
                                         {"d", "00010"},
                                         {"e", "11110"}}, 5);
  CHECK(faultbasis::prefilter_problem(rank4, cfg).report.outcome ==
        FilterOutcome::RejectedLowRank);
}
