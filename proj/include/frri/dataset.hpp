#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace frri {

/// Error raised while ingesting KEEL / CSV text. Carries a 1-based line
/// number (0 when the location is not line-specific).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + std::move(message)
                                : std::move(message)),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Relation used when two values of an attribute are compared.
enum class RelationKind : std::uint8_t { Indiscernibility, Dominance };

/// Per-attribute min/max in original units, fitted on training data.
struct AttributeRange {
  double min = 0.0;
  double max = 1.0;
};

/// Dataset as parsed from text: original-unit values, string labels.
/// Categorical condition attributes have already been dropped (a warning
/// records each removal).
struct RawDataset {
  std::string relation_name;
  std::vector<std::string> attribute_names;   // numeric condition attributes
  std::vector<std::vector<double>> rows;      // rows x attributes, original units
  std::vector<std::string> labels;            // decision value per row
  std::vector<std::string> warnings;
};

/// Normalized numeric decision system. All stored values are in [0,1];
/// class labels are indices into an ordered vocabulary (order of first
/// appearance in the data the system was fitted on).
class DecisionSystem {
 public:
  DecisionSystem() = default;

  std::size_t object_count() const { return labels_.size(); }
  std::size_t attribute_count() const { return attribute_names_.size(); }
  std::size_t class_count() const { return class_vocabulary_.size(); }

  double value(std::size_t object, std::size_t attribute) const {
    return values_[object * attribute_count() + attribute];
  }
  std::span<const double> row(std::size_t object) const {
    return {values_.data() + object * attribute_count(), attribute_count()};
  }

  std::uint32_t label(std::size_t object) const { return labels_[object]; }
  const std::vector<std::uint32_t>& labels() const { return labels_; }
  const std::string& label_name(std::size_t object) const {
    return class_vocabulary_[labels_[object]];
  }
  const std::vector<std::string>& class_vocabulary() const { return class_vocabulary_; }

  const std::vector<std::string>& attribute_names() const { return attribute_names_; }
  const std::vector<AttributeRange>& normalization() const { return norm_params_; }
  const std::vector<RelationKind>& relation_kinds() const { return relation_kinds_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// Count of training objects per class, vocabulary order.
  std::vector<std::size_t> class_sizes() const;

  /// Normalize one original-unit row with the fitted parameters, clamping
  /// out-of-range values to 0 / 1. Accepts rows in the retained-attribute
  /// layout or in the source layout seen at fit time (dropped columns are
  /// skipped); any other arity is an error.
  std::vector<double> transform_new(std::span<const double> raw_row) const;

  /// Map a label string onto the fitted vocabulary; returns class_count()
  /// for labels never seen at fit time.
  std::uint32_t vocabulary_index(std::string_view label) const;

  /// Sub-system over the given attributes, columns reordered to `attributes`.
  DecisionSystem select_attributes(const std::vector<std::size_t>& attributes) const;

  /// Sub-system over the given objects (normalized values copied verbatim;
  /// vocabulary and normalization parameters are kept).
  DecisionSystem select_objects(const std::vector<std::size_t>& objects) const;

  friend DecisionSystem fit_normalize(const RawDataset& raw);

 private:
  std::vector<double> values_;                 // row-major, normalized
  std::vector<std::string> attribute_names_;
  std::vector<AttributeRange> norm_params_;    // per retained attribute
  std::vector<std::size_t> source_columns_;    // index into the fitted RawDataset columns
  std::size_t source_arity_ = 0;               // column count at fit time
  std::vector<RelationKind> relation_kinds_;
  std::vector<std::uint32_t> labels_;
  std::vector<std::string> class_vocabulary_;
  std::vector<std::string> warnings_;
};

struct FoldSplit {
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> test_indices;
};

/// Training system plus the already-normalized (clamped) test rows of one
/// cross-validation fold.
struct FoldData {
  DecisionSystem train;
  std::vector<std::vector<double>> test_rows;  // normalized, train layout
  std::vector<std::string> test_labels;
};

/// Parse KEEL `.dat` text: @relation / @attribute / @inputs / @outputs /
/// @data, comma-separated rows, case-insensitive keywords. Categorical
/// input attributes are dropped with a warning; `?` cells are rejected.
RawDataset parse_keel(std::string_view text);

/// Parse delimited text with a header row; `label_column` names the
/// decision attribute, every other column must be numeric.
RawDataset parse_csv(std::string_view text, const std::string& label_column,
                     char delimiter = ',');

/// Min-max normalize a raw dataset. Constant attributes (max == min) are
/// removed with a warning; zero objects is an error.
DecisionSystem fit_normalize(const RawDataset& raw);

/// Fit on the training file, transform the test file with clamping.
/// The two files must agree on their attribute lists.
FoldData load_fold_pair(const std::string& train_path, const std::string& test_path);

RawDataset parse_keel_file(const std::string& path);

/// Deterministic stratified k-fold split of a raw dataset.
std::vector<FoldSplit> make_folds(const RawDataset& raw, std::size_t k, std::uint64_t seed);

/// Build per-fold training systems and clamped test rows from a raw dataset
/// (normalization fitted on each fold's training part only).
std::vector<FoldData> split_folds(const RawDataset& raw, const std::vector<FoldSplit>& folds);

/// Render a raw dataset as KEEL `.dat` text.
std::string to_keel(const RawDataset& raw);

}  // namespace frri
