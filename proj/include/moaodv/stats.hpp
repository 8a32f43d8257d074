#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace moaodv {

struct WilcoxonResult {
  double r_plus = 0.0;
  double r_minus = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;  ///< nonzero differences used
  bool exact = false;
  /// Every difference was zero; ranks and p-value are meaningless.
  bool degenerate = false;
};

/// Paired signed-rank test on d_i = a_i - b_i. Zero differences are dropped
/// and tied magnitudes get average ranks. The two-sided p-value is exact
/// (every sign assignment) for n <= 20 and uses the tie-corrected normal
/// approximation with continuity correction above.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b);

/// Exact two-sided p-value of a rank sum statistic given the ranks of the
/// nonzero differences. Exposed for testing.
double wilcoxon_exact_p(std::span<const double> ranks, double r_plus);

/// Average ranks (1-based) of `values`, smallest first.
std::vector<double> average_ranks(std::span<const double> values);

struct FriedmanResult {
  std::vector<double> mean_ranks;
  double chi_square = 0.0;
  double p_value = 1.0;
};

/// Rows are blocks, columns treatments. Rank 1 goes to the smallest value in
/// a block, so callers orient the data so that smaller is better.
FriedmanResult friedman_rank(const std::vector<std::vector<double>>& matrix);

double median(std::vector<double> values);

}  // namespace moaodv
