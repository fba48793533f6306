#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frri/dataset.hpp"
#include "frri/ranking.hpp"
#include "frri/rules.hpp"
#include "frri/stats.hpp"

namespace frri {

/// One evaluated configuration: a ranking method plus a retention policy.
/// Naming follows `control`, `<method>-1`, `<method>-0.x`, `ofrfs-0`.
struct VariantSpec {
  std::string name;
  RankingMethod method = RankingMethod::Identity;
  RetentionPolicy policy = RetentionPolicy::full();
};

VariantSpec parse_variant(const std::string& name);

struct FoldMetrics {
  double balanced_accuracy = 0.0;
  std::size_t rule_count = 0;
  double mean_rule_length = 0.0;
  std::size_t retained_attributes = 0;
  bool solver_optimal = true;
};

struct CvRow {
  std::string dataset;
  std::string variant;
  std::size_t fold = 0;
  FoldMetrics metrics;
};

struct AggregateRow {
  std::string dataset;
  std::string variant;
  double mean_balanced_accuracy = 0.0;
  double mean_rule_count = 0.0;
  double mean_rule_length = 0.0;
  bool all_optimal = true;
};

struct SignificanceReport {
  bool computed = false;
  std::string note;
  std::vector<std::string> variant_names;
  std::vector<std::vector<double>> score_matrix;  // dataset x variant mean accuracy
  FriedmanResult friedman;
  ConoverResult conover;
  bool wilcoxon_computed = false;
  WilcoxonResult wilcoxon;  // ofrfs-0.9 vs control, one-sided greater
};

struct ExperimentResult {
  std::vector<std::string> dataset_names;
  std::vector<std::string> variant_names;
  std::vector<CvRow> rows;
  std::vector<AggregateRow> aggregates;  // dataset-major, then variant
  SignificanceReport significance;
  std::vector<std::string> errors;  // datasets that failed, with reasons
};

struct DatasetFolds {
  std::string name;
  std::vector<FoldData> folds;
};

/// Rank on the training system, retain, reduce, fit, classify the test
/// rows, and measure. The caller passes the (cached) attribute order for
/// the variant's method.
FoldMetrics evaluate_fold(const FoldData& fold, const AttributeOrder& order,
                          const RetentionPolicy& policy, const FrriParams& params);

/// Cross-validation of one variant over one dataset's folds.
std::vector<CvRow> run_cv(const DatasetFolds& dataset, const VariantSpec& variant,
                          const FrriParams& params);

/// Full grid: every dataset x variant x fold, ranking computed once per
/// (fold, method). `jobs` bounds worker threads; a failing dataset is
/// recorded and skipped.
ExperimentResult run_experiment(const std::vector<DatasetFolds>& datasets,
                                const std::vector<VariantSpec>& variants,
                                const FrriParams& params, unsigned jobs = 1);

/// Report renderers. Metric selects the aggregate column: "accuracy",
/// "rules" or "length".
std::string render_aggregate_table(const ExperimentResult& result, const std::string& metric);
std::string render_report_csv(const ExperimentResult& result, const FrriParams& params,
                              std::uint64_t seed);
std::string render_fig_curve_csv(const ExperimentResult& result);
std::string render_significance(const ExperimentResult& result);

}  // namespace frri
