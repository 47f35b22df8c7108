#include "tricolor/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include <boost/math/distributions/fisher_f.hpp>

namespace tricolor {

std::vector<double> rank_row(const std::vector<double>& row, bool higher_is_better) {
  const size_t k = row.size();
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return higher_is_better ? row[a] > row[b] : row[a] < row[b];
  });
  std::vector<double> ranks(k, 0.0);
  size_t i = 0;
  while (i < k) {
    size_t j = i;
    while (j + 1 < k && row[order[j + 1]] == row[order[i]]) ++j;
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
    i = j + 1;
  }
  return ranks;
}

FriedmanResult friedman(const std::vector<std::vector<double>>& scores, bool higher_is_better) {
  const int N = static_cast<int>(scores.size());
  if (N < 2) throw std::invalid_argument("friedman needs at least 2 instances");
  const int k = static_cast<int>(scores.front().size());
  if (k < 2) throw std::invalid_argument("friedman needs at least 2 algorithms");
  for (const auto& row : scores)
    if (static_cast<int>(row.size()) != k)
      throw std::invalid_argument("score matrix rows differ in length");

  FriedmanResult result;
  result.instances = N;
  result.algorithms = k;
  result.avg_ranks.assign(k, 0.0);
  for (const auto& row : scores) {
    const auto ranks = rank_row(row, higher_is_better);
    for (int j = 0; j < k; ++j) result.avg_ranks[j] += ranks[j];
  }
  for (auto& r : result.avg_ranks) r /= static_cast<double>(N);

  double sum_sq = 0.0;
  for (double r : result.avg_ranks) sum_sq += r * r;
  const double kk = k;
  result.statistic =
      12.0 * N / (kk * (kk + 1.0)) * (sum_sq - kk * (kk + 1.0) * (kk + 1.0) / 4.0);
  if (result.statistic < 0) result.statistic = 0;  // guard rounding on all-tied data

  const double denom = N * (kk - 1.0) - result.statistic;
  if (result.statistic <= 0.0) {
    result.f_statistic = 0.0;
    result.p_value = 1.0;
    return result;
  }
  if (denom <= 0.0) {
    result.f_statistic = std::numeric_limits<double>::infinity();
    result.p_value = 0.0;
    return result;
  }
  result.f_statistic = (N - 1.0) * result.statistic / denom;
  const boost::math::fisher_f dist(kk - 1.0, (kk - 1.0) * (N - 1.0));
  result.p_value = boost::math::cdf(boost::math::complement(dist, result.f_statistic));
  return result;
}

namespace {

// z quantiles at alpha / (2(k-1)): the two-tailed Bonferroni correction over
// k-1 comparisons against the control.
constexpr int kMaxAlgorithms = 10;
constexpr double kQ05[] = {1.9600, 2.2414, 2.3940, 2.4977, 2.5758,
                           2.6383, 2.6901, 2.7344, 2.7729};
constexpr double kQ10[] = {1.6449, 1.9600, 2.1280, 2.2414, 2.3263,
                           2.3940, 2.4500, 2.4977, 2.5392};

}  // namespace

double bonferroni_dunn_cd(int k, int instances, double alpha) {
  if (k < 2 || k > kMaxAlgorithms)
    throw std::invalid_argument("bonferroni_dunn_cd supports k in [2, 10]");
  if (instances < 1) throw std::invalid_argument("instances must be >= 1");
  const double* table = nullptr;
  if (alpha == 0.05) table = kQ05;
  else if (alpha == 0.10) table = kQ10;
  else throw std::invalid_argument("alpha must be 0.05 or 0.10");
  const double q = table[k - 2];
  return q * std::sqrt(static_cast<double>(k) * (k + 1) / (6.0 * instances));
}

std::vector<RankGroup> significance_report(const std::vector<InstanceScore>& scores, double alpha,
                                           const std::function<void(const std::string&)>& warn) {
  // Fixed algorithm order across all groups.
  std::vector<std::string> algorithms;
  for (const auto& s : scores)
    if (std::find(algorithms.begin(), algorithms.end(), s.algorithm) == algorithms.end())
      algorithms.push_back(s.algorithm);
  std::sort(algorithms.begin(), algorithms.end());

  using GroupKey = std::pair<std::string, std::string>;          // (type, p)
  using InstanceKey = std::tuple<int, int, uint64_t>;            // (n, delta, graph seed)
  std::map<GroupKey, std::map<InstanceKey, std::map<std::string, const InstanceScore*>>> groups;
  for (const auto& s : scores)
    groups[{s.type, s.p_label}][{s.n, s.delta, s.graph_seed}][s.algorithm] = &s;

  std::vector<RankGroup> report;
  for (const auto& [key, instances] : groups) {
    std::vector<std::vector<double>> matrix;
    bool complete = true;
    for (const auto& [ikey, per_algo] : instances) {
      std::vector<double> row;
      for (const auto& algo : algorithms) {
        const auto it = per_algo.find(algo);
        if (it == per_algo.end()) {
          complete = false;
          break;
        }
        const InstanceScore& s = *it->second;
        // SR dominates; the AES tie-break sits far below SR granularity.
        double score = s.sr;
        if (s.aes) score -= *s.aes * 1e-15;
        row.push_back(score);
      }
      if (!complete) break;
      matrix.push_back(std::move(row));
    }
    if (!complete || matrix.size() < 2) {
      if (warn)
        warn("group type=" + key.first + " p=" + key.second +
             (complete ? " has fewer than 2 instances; skipped"
                       : " is missing algorithm results; skipped"));
      continue;
    }
    RankGroup group;
    group.type = key.first;
    group.p_label = key.second;
    group.instances = static_cast<int>(matrix.size());
    group.test = friedman(matrix, /*higher_is_better=*/true);
    group.cd = bonferroni_dunn_cd(static_cast<int>(algorithms.size()),
                                  static_cast<int>(matrix.size()), alpha);
    for (size_t j = 0; j < algorithms.size(); ++j)
      group.entries.push_back({algorithms[j], group.test.avg_ranks[j]});
    report.push_back(std::move(group));
  }
  return report;
}

}  // namespace tricolor
