#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frri/fuzzy.hpp"

namespace frri {

enum class RankingMethod : std::uint8_t { Identity, Ofrfs, MutualInformation, PearsonCorrelation };

const char* to_string(RankingMethod m);
RankingMethod ranking_method_from_string(const std::string& name);

/// Ranked attribute list produced by one of the ordering methods.
/// `ranked` is always a permutation of 0..m-1; score-based methods carry
/// per-attribute scores aligned with `ranked`, the dependency-based one a
/// gamma value per ranked prefix plus the greedy stop position.
struct AttributeOrder {
  RankingMethod method = RankingMethod::Identity;
  std::vector<std::size_t> ranked;
  std::vector<double> scores;
  std::vector<double> gamma_trace;
  std::size_t superreduct_size = 0;
  bool reached_full_dependency = false;
  std::vector<std::string> warnings;
};

/// How much of a ranked list a variant keeps.
struct RetentionPolicy {
  enum class Kind : std::uint8_t { Full, Fraction, Superreduct };
  Kind kind = Kind::Full;
  int tenths = 0;  // 1..9, Fraction only

  static RetentionPolicy full() { return {Kind::Full, 0}; }
  static RetentionPolicy fraction(int tenths) { return {Kind::Fraction, tenths}; }
  static RetentionPolicy superreduct() { return {Kind::Superreduct, 0}; }
};

/// Attributes in their original order.
AttributeOrder identity_order(std::size_t attribute_count);

/// Greedy dependency-degree ordering: repeatedly add the attribute whose
/// addition maximizes gamma (first strict maximizer in index order wins);
/// once gamma reaches the full-set value the remaining attributes are
/// appended in their original order. The greedy stop position is recorded
/// as the superreduct size.
AttributeOrder quickreduct_ordered(const DecisionSystem& ds, const Connectives& conn);

/// Mutual information between each attribute and the class, estimated with
/// the k-nearest-neighbor continuous/discrete estimator (k = 3, no jitter).
/// Attributes sorted by score descending, ties by original index.
AttributeOrder mi_scores(const DecisionSystem& ds);

/// Absolute Pearson correlation between each attribute and the
/// integer-encoded class labels; sorted descending, ties by index.
AttributeOrder pcc_scores(const DecisionSystem& ds);

AttributeOrder rank_attributes(const DecisionSystem& ds, RankingMethod method,
                               const Connectives& conn);

/// Apply a retention policy to a ranked order; the result is always a
/// prefix of `order.ranked`. Fraction counts of 1 or 0 escalate to the
/// smallest retention keeping at least two attributes.
std::vector<std::size_t> apply_policy(const AttributeOrder& order, const RetentionPolicy& policy,
                                      std::size_t total_attributes);

}  // namespace frri
