#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frri/dataset.hpp"

namespace frri {

enum class TNormKind : std::uint8_t { Minimum, Product, Lukasiewicz };
enum class ImplicatorKind : std::uint8_t { KleeneDienes, Lukasiewicz, Goedel };

/// Connective choices plus the similarity scale for the indiscernibility
/// relation. scale = 1 is the plain 1 - |x - y| relation; smaller scales
/// make similarity local: max(0, 1 - |x - y| / scale).
struct Connectives {
  TNormKind tnorm = TNormKind::Minimum;
  ImplicatorKind implicator = ImplicatorKind::Lukasiewicz;
  double similarity_scale = 1.0;
};

const char* to_string(TNormKind k);
const char* to_string(ImplicatorKind k);
TNormKind tnorm_from_string(const std::string& name);
ImplicatorKind implicator_from_string(const std::string& name);

/// T(a, b); arguments must lie in [0,1].
double tnorm_apply(TNormKind kind, double a, double b);

/// I(a, b); arguments must lie in [0,1].
double implicator_apply(ImplicatorKind kind, double a, double b);

/// Similarity of two normalized values: max(0, 1 - |x - y| / scale).
double indiscernibility(double x, double y, double scale = 1.0);

/// Degree to which x dominates y: min(1 - (y - x), 1); equals 1 when x >= y.
double dominance(double x, double y);

/// Membership function over a finite universe; every degree in [0,1].
class FuzzySet {
 public:
  FuzzySet() = default;
  explicit FuzzySet(std::vector<double> memberships);

  std::size_t size() const { return memberships_.size(); }
  double operator[](std::size_t u) const { return memberships_[u]; }
  const std::vector<double>& memberships() const { return memberships_; }

  /// Sigma-count: sum of all membership degrees.
  double sigma_count() const;

 private:
  std::vector<double> memberships_;
};

/// Dense object-by-object fuzzy relation.
class RelationMatrix {
 public:
  RelationMatrix() = default;
  explicit RelationMatrix(std::size_t n, double fill = 0.0)
      : n_(n), values_(n * n, fill) {}

  std::size_t size() const { return n_; }
  double operator()(std::size_t u, std::size_t v) const { return values_[u * n_ + v]; }
  double& at(std::size_t u, std::size_t v) { return values_[u * n_ + v]; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

/// Relation R_a over the system's objects for one attribute, using the
/// given comparison kind.
RelationMatrix attribute_relation(const DecisionSystem& ds, std::size_t attribute,
                                  RelationKind kind, double scale = 1.0);

/// In-place t-norm aggregation of one more attribute into an existing
/// relation: R := T(R, R_a).
void aggregate_attribute(RelationMatrix& relation, const DecisionSystem& ds,
                         std::size_t attribute, RelationKind kind, TNormKind tnorm,
                         double scale = 1.0);

/// Fuzzy B-indiscernibility relation: t-norm aggregation of the
/// per-attribute relations over a non-empty attribute subset.
RelationMatrix b_indiscernibility(const DecisionSystem& ds,
                                  const std::vector<std::size_t>& attributes, TNormKind tnorm,
                                  double scale = 1.0);

/// lower(A)(u) = min over v of I(R(u,v), A(v)).
FuzzySet lower_approximation(const FuzzySet& set, const RelationMatrix& relation,
                             ImplicatorKind implicator);

/// upper(A)(u) = max over v of T(R(u,v), A(v)).
FuzzySet upper_approximation(const FuzzySet& set, const RelationMatrix& relation,
                             TNormKind tnorm);

/// POS_B(u): membership of u in the lower approximation of its own
/// decision class under the aggregated relation.
FuzzySet positive_region(const DecisionSystem& ds, const RelationMatrix& relation,
                         ImplicatorKind implicator);
FuzzySet positive_region(const DecisionSystem& ds, const std::vector<std::size_t>& attributes,
                         const Connectives& conn);

/// Degree of dependency: |POS_B| / |POS_A| with A the full attribute set.
double gamma_dependency(const DecisionSystem& ds, const std::vector<std::size_t>& attributes,
                        const Connectives& conn);

/// |POS_B| / pos_all_sigma for a prebuilt relation; pos_all_sigma must be
/// positive (degenerate systems are rejected upstream).
double gamma_from_relation(const DecisionSystem& ds, const RelationMatrix& relation,
                           ImplicatorKind implicator, double pos_all_sigma);

}  // namespace frri
