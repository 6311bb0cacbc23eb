#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "faultbasis/errors.hpp"
#include "faultbasis/matrix.hpp"
#include "faultbasis/ratio.hpp"
#include "faultbasis/rng.hpp"
#include "faultbasis/signature.hpp"

namespace faultbasis {

struct SynthSpec {
  std::string problem_id = "synth";
  int planted_rank = 1;
  int extra_dependent_rows = 0;
  int noise_rows = 0;
  int d = 1;
  Ratio overlap_bias = Ratio(1, 2);  // inclusion probability per planted row
  std::uint64_t seed = 0;
};

struct SynthResult {
  VerdictMatrix matrix;
  std::vector<int> planted_rows;  // indices of the planted disjoint basis
  int planted_rank = 0;
};

namespace detail {

inline std::string synth_code_id(std::size_t index, std::size_t total) {
  std::size_t digits = 1;
  for (std::size_t v = total > 0 ? total - 1 : 0; v >= 10; v /= 10) ++digits;
  if (digits < 3) digits = 3;
  std::string num = std::to_string(index);
  return "w" + std::string(digits - num.size(), '0') + num;
}

}  // namespace detail

/// Builds a matrix with known structure: planted_rank rows with mutually
/// disjoint supports partitioning the d columns (so a zero-diversity basis
/// exists), extra_dependent_rows sums of random planted subsets (rank
/// unchanged), and noise_rows of unconstrained random nonzero bits. The
/// planted rows come first and are reported as ground truth.
inline SynthResult synth(const SynthSpec& spec) {
  if (spec.d < 1) throw InfeasibleSpec("column count must be at least 1");
  if (spec.planted_rank < 1) throw InfeasibleSpec("planted rank must be at least 1");
  if (spec.planted_rank > spec.d)
    throw InfeasibleSpec("cannot plant " + std::to_string(spec.planted_rank) +
                         " disjoint rows over " + std::to_string(spec.d) + " columns");
  if (spec.extra_dependent_rows < 0 || spec.noise_rows < 0)
    throw InfeasibleSpec("row counts must be nonnegative");
  if (spec.overlap_bias < Ratio(0) || spec.overlap_bias > Ratio(1))
    throw InfeasibleSpec("overlap bias must lie in [0, 1]");
  if (spec.overlap_bias.denominator() > std::numeric_limits<std::uint64_t>::max())
    throw InfeasibleSpec("overlap bias is too fine-grained");
  const auto bias_num = spec.overlap_bias.numerator().convert_to<std::uint64_t>();
  const auto bias_den = spec.overlap_bias.denominator().convert_to<std::uint64_t>();

  SplitMix64 rng(spec.seed);
  const int r = spec.planted_rank;

  // Disjoint supports covering every column: one distinct column per
  // planted row first, then the rest assigned uniformly.
  std::vector<int> cols(static_cast<std::size_t>(spec.d));
  std::iota(cols.begin(), cols.end(), 0);
  rng.shuffle(cols);
  std::vector<Signature> rows;
  for (int i = 0; i < r; ++i) rows.emplace_back(spec.d);
  for (int i = 0; i < r; ++i) rows[static_cast<std::size_t>(i)].set(cols[static_cast<std::size_t>(i)]);
  for (int j = r; j < spec.d; ++j)
    rows[rng.next_below(static_cast<std::uint64_t>(r))].set(cols[static_cast<std::size_t>(j)]);

  for (int t = 0; t < spec.extra_dependent_rows; ++t) {
    Signature row(spec.d);
    bool any = false;
    for (int i = 0; i < r; ++i) {
      if (rng.next_bernoulli(bias_num, bias_den)) {
        row ^= rows[static_cast<std::size_t>(i)];
        any = true;
      }
    }
    if (!any) row = rows[rng.next_below(static_cast<std::uint64_t>(r))];
    rows.push_back(std::move(row));  // disjoint supports never cancel to zero
  }

  for (int t = 0; t < spec.noise_rows; ++t) {
    Signature row(spec.d);
    do {
      for (int j = 0; j < spec.d; ++j)
        if (rng.next() & 1) row.set(j);
    } while (row.is_zero());
    rows.push_back(std::move(row));
  }

  SynthResult res;
  res.matrix.problem_id = spec.problem_id;
  res.matrix.width = spec.d;
  res.matrix.rows = std::move(rows);
  for (std::size_t i = 0; i < res.matrix.rows.size(); ++i)
    res.matrix.row_ids.push_back(detail::synth_code_id(i, res.matrix.rows.size()));
  res.planted_rank = r;
  for (int i = 0; i < r; ++i) res.planted_rows.push_back(i);
  return res;
}

}  // namespace faultbasis
