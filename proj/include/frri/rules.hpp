#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "frri/bitset.hpp"
#include "frri/dataset.hpp"
#include "frri/fuzzy.hpp"

namespace frri {

/// Condition attached to one attribute of a rule.
enum class ConditionKind : std::uint8_t { Unused, Similar, Dominant, Dominated };

const char* to_string(ConditionKind k);
ConditionKind condition_kind_from_string(const std::string& name);

struct FrriParams {
  Connectives connectives;
  double theta = 0.5;      // coverage threshold for the selection step
  double epsilon = 0.0;    // consistency tolerance in the shortening step
  std::uint64_t node_budget = 5'000'000;
};

/// IF-THEN rule generated from one training object: per-attribute condition
/// kinds anchored at the generator's values, a consequent class, and the
/// generator's lower-approximation membership in that class.
struct Rule {
  std::size_t generator = 0;
  std::vector<double> anchors;          // normalized generator values
  std::vector<ConditionKind> kinds;
  std::uint32_t consequent_class = 0;
  double consequent_degree = 0.0;

  std::size_t length() const {
    std::size_t c = 0;
    for (auto k : kinds)
      if (k != ConditionKind::Unused) ++c;
    return c;
  }
};

struct Ruleset {
  std::vector<std::string> attribute_names;
  std::vector<AttributeRange> normalization;
  std::vector<RelationKind> relation_kinds;
  std::vector<std::string> class_vocabulary;
  std::vector<double> class_priors;     // training frequency per class
  FrriParams params;
  std::vector<Rule> rules;
  bool selection_optimal = true;

  double mean_rule_length() const;
};

/// Coverage matrix z (rule x training object) together with the selection
/// indicators of its minimum set cover.
struct CoverInstance {
  std::vector<Bitset> z;
  std::vector<std::uint8_t> selected;
  bool optimal = false;
};

/// Rule with a SIMILAR condition on every attribute of `ds`, anchored at
/// object u; the consequent degree is u's positive-region membership under
/// the full attribute set of `ds`.
Rule total_rule(const DecisionSystem& ds, std::size_t u, const FrriParams& params);

/// min over attributes of the per-kind relation value (UNUSED counts as 1).
double matching_degree(const Rule& rule, std::span<const double> row, double similarity_scale);

/// min(matching degree, consequent degree).
double covering_membership(const Rule& rule, std::span<const double> row,
                           double similarity_scale);

/// Fuzzy-subset test of the rule's covering set against its (crisp)
/// consequent class over the training objects, with tolerance epsilon.
bool is_consistent(const DecisionSystem& ds, const Rule& rule, const FrriParams& params);

/// Greedy shortening of u's total rule: attributes are visited in
/// `attr_order`, each condition tries UNUSED, DOMINANT, DOMINATED and keeps
/// the first kind preserving consistency (SIMILAR otherwise).
Rule rule_prune(const DecisionSystem& ds, std::size_t u,
                const std::vector<std::size_t>& attr_order, const FrriParams& params);

/// One independently pruned rule per training object.
Ruleset shorten_all(const DecisionSystem& ds, const std::vector<std::size_t>& attr_order,
                    const FrriParams& params);

/// z[r].test(v) iff rule r covers object v at level >= theta; the diagonal
/// (each rule's own generator) is set unconditionally.
std::vector<Bitset> coverage_matrix(const DecisionSystem& ds, const Ruleset& ruleset,
                                    double theta);

/// Minimum-cardinality rule selection over a coverage matrix.
CoverInstance select_rules(std::vector<Bitset> z, std::size_t num_objects,
                           std::uint64_t node_budget = 5'000'000);

/// Shorten, select, and assemble the final ruleset.
Ruleset fit(const DecisionSystem& ds, const std::vector<std::size_t>& attr_order,
            const FrriParams& params);

/// Consequent class of the rule with the highest covering degree; ties go
/// to the class with the higher training prior, then to vocabulary order.
std::uint32_t classify(const Ruleset& ruleset, std::span<const double> row);

std::string classify_label(const Ruleset& ruleset, std::span<const double> row);

/// JSON persistence; save(load(x)) is byte-identical to save(x).
std::string ruleset_to_json(const Ruleset& ruleset);
Ruleset ruleset_from_json(const std::string& text);
void save_ruleset(const Ruleset& ruleset, const std::string& path);
Ruleset load_ruleset(const std::string& path);

/// Human-readable IF-THEN rendering with anchors mapped back to original
/// units.
std::string rule_to_text(const Ruleset& ruleset, const Rule& rule);

}  // namespace frri
