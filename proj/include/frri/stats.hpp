#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace frri {

/// Arithmetic mean of per-class recall over the classes present in
/// `truth`; classes never seen in `truth` do not enter the mean.
double balanced_accuracy(const std::vector<std::string>& truth,
                         const std::vector<std::string>& predicted);

/// Ranks 1..n with average ranks for ties.
std::vector<double> midrank(std::span<const double> values);

struct FriedmanResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::vector<double> rank_sums;  // per column
  bool degenerate = false;        // all rows fully tied
};

/// Friedman test over a blocks-by-treatments score matrix (rows = datasets,
/// columns = variants), tie-corrected, chi-square reference with k-1
/// degrees of freedom.
FriedmanResult friedman_test(const std::vector<std::vector<double>>& scores);

struct ConoverResult {
  double friedman_statistic = 0.0;
  std::size_t df = 0;  // pairwise t degrees of freedom, (n-1)(k-1)
  std::vector<std::vector<double>> statistics;  // k x k, |t| values
  std::vector<std::vector<double>> p_values;    // k x k, two-sided
  bool degenerate = false;
};

/// Conover-Iman pairwise comparisons from Friedman ranks (the classical
/// form with the Friedman-statistic adjustment in the variance).
ConoverResult conover_posthoc(const std::vector<std::vector<double>>& scores);

enum class Alternative : std::uint8_t { TwoSided, Greater, Less };

struct WilcoxonResult {
  double statistic = 0.0;  // W+, sum of ranks of positive differences
  double p_value = 1.0;
  std::size_t n_used = 0;  // pairs left after dropping zero differences
  bool exact = false;
};

/// Wilcoxon signed-rank test for paired samples: zero differences dropped,
/// mean ranks for ties, exact null (full sign enumeration) for n <= 25 and
/// the tie/continuity-corrected normal approximation beyond.
WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& x, const std::vector<double>& y,
                                    Alternative alternative);

}  // namespace frri
