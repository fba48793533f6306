#include "frri/ranking.hpp"

#include <algorithm>
#include <boost/math/special_functions/digamma.hpp>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace frri {

namespace {

constexpr double kGammaStopTolerance = 1e-9;

// Sort attribute indices by score descending, ties by original index.
AttributeOrder order_by_scores(RankingMethod method, std::vector<double> scores) {
  AttributeOrder out;
  out.method = method;
  out.ranked.resize(scores.size());
  std::iota(out.ranked.begin(), out.ranked.end(), 0);
  std::stable_sort(out.ranked.begin(), out.ranked.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  out.scores.reserve(scores.size());
  for (auto a : out.ranked) out.scores.push_back(scores[a]);
  return out;
}

// k-th nearest-neighbor distance of `value` among `sorted` (self excluded:
// `pos` is the index of this sample inside `sorted`).
double kth_neighbor_distance(const std::vector<double>& sorted, std::size_t pos, std::size_t k) {
  std::size_t lo = pos, hi = pos;  // window [lo, hi] around the sample
  double dist = 0.0;
  for (std::size_t step = 0; step < k; ++step) {
    const double left = lo > 0 ? sorted[pos] - sorted[lo - 1] : -1.0;
    const double right = hi + 1 < sorted.size() ? sorted[hi + 1] - sorted[pos] : -1.0;
    if (left >= 0.0 && (right < 0.0 || left <= right)) {
      dist = left;
      --lo;
    } else {
      dist = right;
      ++hi;
    }
  }
  return dist;
}

double knn_mi_estimate(const std::vector<double>& column,
                       const std::vector<std::uint32_t>& labels, std::size_t class_count,
                       std::size_t k) {
  const std::size_t n = column.size();
  std::vector<double> radius(n, 0.0);
  std::vector<std::size_t> k_used(n, 0), label_count(n, 0);

  for (std::size_t c = 0; c < class_count; ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i)
      if (labels[i] == c) members.push_back(i);
    for (auto i : members) label_count[i] = members.size();
    if (members.size() < 2) continue;
    const std::size_t kc = std::min(k, members.size() - 1);

    std::vector<std::size_t> by_value(members);
    std::stable_sort(by_value.begin(), by_value.end(),
                     [&](std::size_t a, std::size_t b) { return column[a] < column[b]; });
    std::vector<double> sorted_vals(by_value.size());
    for (std::size_t j = 0; j < by_value.size(); ++j) sorted_vals[j] = column[by_value[j]];
    for (std::size_t j = 0; j < by_value.size(); ++j) {
      const double d = kth_neighbor_distance(sorted_vals, j, kc);
      radius[by_value[j]] = std::nextafter(d, 0.0);
      k_used[by_value[j]] = kc;
    }
  }

  // Samples whose class has a single member carry no neighborhood signal.
  std::vector<std::size_t> used;
  for (std::size_t i = 0; i < n; ++i)
    if (label_count[i] > 1) used.push_back(i);
  if (used.empty()) return 0.0;

  std::vector<double> pool;
  pool.reserve(used.size());
  for (auto i : used) pool.push_back(column[i]);
  std::sort(pool.begin(), pool.end());

  using boost::math::digamma;
  double mean_psi_k = 0.0, mean_psi_label = 0.0, mean_psi_m = 0.0;
  for (auto i : used) {
    const auto lo = std::lower_bound(pool.begin(), pool.end(), column[i] - radius[i]);
    const auto hi = std::upper_bound(pool.begin(), pool.end(), column[i] + radius[i]);
    const auto within = static_cast<std::size_t>(hi - lo);  // includes self
    mean_psi_m += digamma(static_cast<double>(within - 1 + 1));
    mean_psi_k += digamma(static_cast<double>(k_used[i]));
    mean_psi_label += digamma(static_cast<double>(label_count[i]));
  }
  const double nu = static_cast<double>(used.size());
  const double mi =
      digamma(nu) + mean_psi_k / nu - mean_psi_label / nu - mean_psi_m / nu;
  return std::max(0.0, mi);
}

}  // namespace

const char* to_string(RankingMethod m) {
  switch (m) {
    case RankingMethod::Identity: return "identity";
    case RankingMethod::Ofrfs: return "ofrfs";
    case RankingMethod::MutualInformation: return "mi";
    case RankingMethod::PearsonCorrelation: return "pcc";
  }
  return "?";
}

RankingMethod ranking_method_from_string(const std::string& name) {
  if (name == "identity" || name == "control") return RankingMethod::Identity;
  if (name == "ofrfs") return RankingMethod::Ofrfs;
  if (name == "mi") return RankingMethod::MutualInformation;
  if (name == "pcc") return RankingMethod::PearsonCorrelation;
  throw std::invalid_argument("unknown ranking method '" + name + "'");
}

AttributeOrder identity_order(std::size_t attribute_count) {
  AttributeOrder out;
  out.method = RankingMethod::Identity;
  out.ranked.resize(attribute_count);
  std::iota(out.ranked.begin(), out.ranked.end(), 0);
  return out;
}

AttributeOrder quickreduct_ordered(const DecisionSystem& ds, const Connectives& conn) {
  const std::size_t m = ds.attribute_count();
  const std::size_t n = ds.object_count();
  if (m == 0) throw std::invalid_argument("quickreduct: system has no attributes");

  std::vector<std::size_t> all(m);
  std::iota(all.begin(), all.end(), 0);
  const double pos_all = positive_region(ds, all, conn).sigma_count();
  if (!(pos_all > 0.0))
    throw std::invalid_argument("quickreduct: degenerate system (full positive region empty)");

  AttributeOrder out;
  out.method = RankingMethod::Ofrfs;

  // gamma of the empty set: the all-ones relation, so an object scores 1
  // only when no other class exists.
  bool single_class = true;
  for (std::size_t u = 1; u < n && single_class; ++u)
    single_class = ds.label(u) == ds.label(0);
  double gamma_current = single_class ? 1.0 : 0.0;

  std::vector<bool> taken(m, false);
  RelationMatrix current;   // relation of the selected prefix
  RelationMatrix scratch, best_relation;

  while (out.ranked.size() < m && gamma_current < 1.0 - kGammaStopTolerance) {
    double best_gamma = gamma_current;
    std::size_t best_attr = m;
    for (std::size_t a = 0; a < m; ++a) {
      if (taken[a]) continue;
      if (out.ranked.empty())
        scratch = attribute_relation(ds, a, ds.relation_kinds()[a], conn.similarity_scale);
      else {
        scratch = current;
        aggregate_attribute(scratch, ds, a, ds.relation_kinds()[a], conn.tnorm,
                            conn.similarity_scale);
      }
      const double g = gamma_from_relation(ds, scratch, conn.implicator, pos_all);
      if (g > best_gamma) {
        best_gamma = g;
        best_attr = a;
        std::swap(best_relation, scratch);
      }
    }
    if (best_attr == m) break;  // no strict improvement: gamma is stalled
    std::swap(current, best_relation);
    taken[best_attr] = true;
    out.ranked.push_back(best_attr);
    out.gamma_trace.push_back(best_gamma);
    gamma_current = best_gamma;
  }

  out.superreduct_size = out.ranked.size();
  out.reached_full_dependency = gamma_current >= 1.0 - kGammaStopTolerance;
  if (!out.reached_full_dependency && out.ranked.size() < m)
    out.warnings.push_back("gamma stalled below the full-set dependency degree");

  // Remaining attributes keep their original order; the trace is extended
  // so every ranked prefix has its dependency degree.
  for (std::size_t a = 0; a < m; ++a) {
    if (taken[a]) continue;
    if (out.ranked.empty())
      current = attribute_relation(ds, a, ds.relation_kinds()[a], conn.similarity_scale);
    else
      aggregate_attribute(current, ds, a, ds.relation_kinds()[a], conn.tnorm,
                          conn.similarity_scale);
    out.ranked.push_back(a);
    out.gamma_trace.push_back(gamma_from_relation(ds, current, conn.implicator, pos_all));
  }
  return out;
}

AttributeOrder mi_scores(const DecisionSystem& ds) {
  const std::size_t m = ds.attribute_count();
  const std::size_t n = ds.object_count();
  if (n < 2) throw std::invalid_argument("mi_scores: need at least two objects");

  std::vector<double> scores(m, 0.0);
  AttributeOrder out;
  if (ds.class_count() <= 1) {
    out = order_by_scores(RankingMethod::MutualInformation, scores);
    out.warnings.push_back("single-class system: all mutual information scores are 0");
    return out;
  }
  std::vector<double> column(n);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t u = 0; u < n; ++u) column[u] = ds.value(u, a);
    scores[a] = knn_mi_estimate(column, ds.labels(), ds.class_count(), 3);
  }
  return order_by_scores(RankingMethod::MutualInformation, std::move(scores));
}

AttributeOrder pcc_scores(const DecisionSystem& ds) {
  const std::size_t m = ds.attribute_count();
  const std::size_t n = ds.object_count();
  if (n < 2) throw std::invalid_argument("pcc_scores: need at least two objects");

  std::vector<double> scores(m, 0.0);
  double label_mean = 0.0;
  for (std::size_t u = 0; u < n; ++u) label_mean += ds.label(u);
  label_mean /= static_cast<double>(n);
  double label_var = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    const double d = ds.label(u) - label_mean;
    label_var += d * d;
  }

  AttributeOrder out;
  if (label_var == 0.0) {
    out = order_by_scores(RankingMethod::PearsonCorrelation, scores);
    out.warnings.push_back("single-class system: all correlation scores are 0");
    return out;
  }

  for (std::size_t a = 0; a < m; ++a) {
    double mean = 0.0;
    for (std::size_t u = 0; u < n; ++u) mean += ds.value(u, a);
    mean /= static_cast<double>(n);
    double var = 0.0, cov = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      const double dx = ds.value(u, a) - mean;
      var += dx * dx;
      cov += dx * (ds.label(u) - label_mean);
    }
    scores[a] = var > 0.0 ? std::abs(cov) / std::sqrt(var * label_var) : 0.0;
  }
  return order_by_scores(RankingMethod::PearsonCorrelation, std::move(scores));
}

AttributeOrder rank_attributes(const DecisionSystem& ds, RankingMethod method,
                               const Connectives& conn) {
  switch (method) {
    case RankingMethod::Identity: return identity_order(ds.attribute_count());
    case RankingMethod::Ofrfs: return quickreduct_ordered(ds, conn);
    case RankingMethod::MutualInformation: return mi_scores(ds);
    case RankingMethod::PearsonCorrelation: return pcc_scores(ds);
  }
  throw std::invalid_argument("unknown ranking method");
}

std::vector<std::size_t> apply_policy(const AttributeOrder& order, const RetentionPolicy& policy,
                                      std::size_t total_attributes) {
  if (order.ranked.size() != total_attributes &&
      policy.kind != RetentionPolicy::Kind::Superreduct)
    throw std::invalid_argument("apply_policy: order does not cover all attributes");

  std::size_t keep = 0;
  switch (policy.kind) {
    case RetentionPolicy::Kind::Full:
      keep = order.ranked.size();
      break;
    case RetentionPolicy::Kind::Fraction: {
      if (policy.tenths < 1 || policy.tenths > 9)
        throw std::invalid_argument("apply_policy: fraction must be between 0.1 and 0.9");
      keep = policy.tenths * total_attributes / 10;
      // A retention of 0 or 1 attributes is a trivial system; escalate to
      // the smallest level keeping at least two.
      for (int x = policy.tenths + 1; keep <= 1 && x <= 9; ++x)
        keep = static_cast<std::size_t>(x) * total_attributes / 10;
      if (keep <= 1) keep = total_attributes;
      keep = std::min(keep, order.ranked.size());
      break;
    }
    case RetentionPolicy::Kind::Superreduct:
      if (order.method != RankingMethod::Ofrfs)
        throw std::invalid_argument("apply_policy: superreduct retention needs an ofrfs order");
      keep = order.superreduct_size;
      break;
  }
  return {order.ranked.begin(), order.ranked.begin() + static_cast<std::ptrdiff_t>(keep)};
}

}  // namespace frri
