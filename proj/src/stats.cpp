#include "frri/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace frri {

namespace {

constexpr double kTiny = 1e-12;

void check_matrix(const std::vector<std::vector<double>>& scores) {
  if (scores.size() < 2) throw std::invalid_argument("need at least two rows (datasets)");
  const std::size_t k = scores[0].size();
  if (k < 2) throw std::invalid_argument("need at least two columns (variants)");
  for (const auto& row : scores)
    if (row.size() != k) throw std::invalid_argument("ragged score matrix");
}

struct RankSummary {
  std::size_t n = 0, k = 0;
  std::vector<double> rank_sums;   // per column
  double a1 = 0.0;                 // sum of squared ranks
  double c1 = 0.0;                 // n k (k+1)^2 / 4
};

RankSummary summarize_ranks(const std::vector<std::vector<double>>& scores) {
  RankSummary s;
  s.n = scores.size();
  s.k = scores[0].size();
  s.rank_sums.assign(s.k, 0.0);
  for (const auto& row : scores) {
    const auto ranks = midrank(row);
    for (std::size_t j = 0; j < s.k; ++j) {
      s.rank_sums[j] += ranks[j];
      s.a1 += ranks[j] * ranks[j];
    }
  }
  const double n = static_cast<double>(s.n), k = static_cast<double>(s.k);
  s.c1 = n * k * (k + 1.0) * (k + 1.0) / 4.0;
  return s;
}

double friedman_statistic(const RankSummary& s) {
  const double n = static_cast<double>(s.n), k = static_cast<double>(s.k);
  double dev = 0.0;
  for (double rj : s.rank_sums) {
    const double d = rj - n * (k + 1.0) / 2.0;
    dev += d * d;
  }
  return (k - 1.0) * dev / (s.a1 - s.c1);
}

}  // namespace

double balanced_accuracy(const std::vector<std::string>& truth,
                         const std::vector<std::string>& predicted) {
  if (truth.empty()) throw std::invalid_argument("balanced_accuracy: empty input");
  if (truth.size() != predicted.size())
    throw std::invalid_argument("balanced_accuracy: length mismatch");
  std::vector<std::string> classes;
  for (const auto& t : truth)
    if (std::find(classes.begin(), classes.end(), t) == classes.end()) classes.push_back(t);
  double total = 0.0;
  for (const auto& c : classes) {
    std::size_t support = 0, hits = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
      if (truth[i] != c) continue;
      ++support;
      if (predicted[i] == c) ++hits;
    }
    total += static_cast<double>(hits) / static_cast<double>(support);
  }
  return total / static_cast<double>(classes.size());
}

std::vector<double> midrank(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[idx[j + 1]] == values[idx[i]]) ++j;
    const double mean_rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[idx[t]] = mean_rank;
    i = j + 1;
  }
  return ranks;
}

FriedmanResult friedman_test(const std::vector<std::vector<double>>& scores) {
  check_matrix(scores);
  const auto s = summarize_ranks(scores);
  FriedmanResult out;
  out.rank_sums = s.rank_sums;
  if (s.a1 - s.c1 <= kTiny) {
    // Every row fully tied: no information, statistic 0 by convention.
    out.degenerate = true;
    return out;
  }
  out.statistic = friedman_statistic(s);
  boost::math::chi_squared dist(static_cast<double>(s.k - 1));
  out.p_value = boost::math::cdf(boost::math::complement(dist, out.statistic));
  return out;
}

ConoverResult conover_posthoc(const std::vector<std::vector<double>>& scores) {
  check_matrix(scores);
  const auto s = summarize_ranks(scores);
  const double n = static_cast<double>(s.n), k = static_cast<double>(s.k);

  ConoverResult out;
  out.df = (s.n - 1) * (s.k - 1);
  out.statistics.assign(s.k, std::vector<double>(s.k, 0.0));
  out.p_values.assign(s.k, std::vector<double>(s.k, 1.0));

  if (s.a1 - s.c1 <= kTiny) {
    out.degenerate = true;
    return out;
  }
  const double t1 = friedman_statistic(s);
  out.friedman_statistic = t1;

  const double spread = 1.0 - t1 / (n * (k - 1.0));
  const double se2 = 2.0 * n * (s.a1 - s.c1) / ((n - 1.0) * (k - 1.0)) * spread;
  boost::math::students_t tdist(static_cast<double>(out.df));
  for (std::size_t i = 0; i < s.k; ++i) {
    for (std::size_t j = i + 1; j < s.k; ++j) {
      const double diff = std::abs(s.rank_sums[i] - s.rank_sums[j]);
      double t, p;
      if (se2 <= kTiny) {
        // Perfectly consistent rankings: any rank-sum gap is conclusive.
        t = diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
        p = diff == 0.0 ? 1.0 : 0.0;
      } else {
        t = diff / std::sqrt(se2);
        p = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(tdist, t)));
      }
      out.statistics[i][j] = out.statistics[j][i] = t;
      out.p_values[i][j] = out.p_values[j][i] = p;
    }
  }
  return out;
}

WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& x, const std::vector<double>& y,
                                    Alternative alternative) {
  if (x.size() != y.size())
    throw std::invalid_argument("wilcoxon_signed_rank: samples must be paired");
  std::vector<double> diffs;
  diffs.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != y[i]) diffs.push_back(x[i] - y[i]);

  WilcoxonResult out;
  out.n_used = diffs.size();
  if (diffs.empty()) {
    out.exact = true;
    return out;  // all differences zero: p = 1
  }
  if (diffs.size() < 6)
    throw std::invalid_argument(
        "wilcoxon_signed_rank: need at least 6 non-zero differences, got " +
        std::to_string(diffs.size()));

  const std::size_t n = diffs.size();
  std::vector<double> abs_diffs(n);
  for (std::size_t i = 0; i < n; ++i) abs_diffs[i] = std::abs(diffs[i]);
  const auto ranks = midrank(abs_diffs);

  double w_plus = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    if (diffs[i] > 0.0) w_plus += ranks[i];
  out.statistic = w_plus;

  double p_greater, p_less;
  if (n <= 25) {
    out.exact = true;
    // Mean ranks are half-integral; doubling them makes the sign-flip null
    // an integer subset-sum distribution.
    std::vector<std::size_t> doubled(n);
    std::size_t max_sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      doubled[i] = static_cast<std::size_t>(std::llround(2.0 * ranks[i]));
      max_sum += doubled[i];
    }
    std::vector<std::uint64_t> counts(max_sum + 1, 0);
    counts[0] = 1;
    for (auto d : doubled)
      for (std::size_t s = max_sum; s >= d; --s) counts[s] += counts[s - d];
    const double total = std::pow(2.0, static_cast<double>(n));
    const auto w2 = static_cast<std::size_t>(std::llround(2.0 * w_plus));
    double ge = 0.0, le = 0.0;
    for (std::size_t s = 0; s <= max_sum; ++s) {
      if (s >= w2) ge += static_cast<double>(counts[s]);
      if (s <= w2) le += static_cast<double>(counts[s]);
    }
    p_greater = ge / total;
    p_less = le / total;
  } else {
    const double nn = static_cast<double>(n);
    const double mu = nn * (nn + 1.0) / 4.0;
    double tie_term = 0.0;
    {
      std::vector<double> sorted(abs_diffs);
      std::sort(sorted.begin(), sorted.end());
      std::size_t i = 0;
      while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && sorted[j + 1] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i + 1);
        tie_term += t * t * t - t;
        i = j + 1;
      }
    }
    const double sigma2 = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_term / 48.0;
    const double sigma = std::sqrt(sigma2);
    boost::math::normal norm;
    p_greater = boost::math::cdf(boost::math::complement(norm, (w_plus - mu - 0.5) / sigma));
    p_less = boost::math::cdf(norm, (w_plus - mu + 0.5) / sigma);
  }

  switch (alternative) {
    case Alternative::Greater: out.p_value = p_greater; break;
    case Alternative::Less: out.p_value = p_less; break;
    case Alternative::TwoSided:
      out.p_value = std::min(1.0, 2.0 * std::min(p_greater, p_less));
      break;
  }
  return out;
}

}  // namespace frri
