#ifndef TRICOLOR_STATS_HPP
#define TRICOLOR_STATS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace tricolor {

/// Ranks within one instance row; ties receive their average rank. Rank 1 is
/// best: the highest score when higher_is_better, the lowest otherwise.
std::vector<double> rank_row(const std::vector<double>& row, bool higher_is_better);

struct FriedmanResult {
  std::vector<double> avg_ranks;  // one per algorithm column
  double statistic = 0.0;         // Friedman chi-square
  double f_statistic = 0.0;       // Iman-Davenport refinement
  double p_value = 1.0;           // from F(k-1, (k-1)(N-1))
  int instances = 0;
  int algorithms = 0;
};

/// Friedman test over an N x k score matrix (N instances, k algorithms).
FriedmanResult friedman(const std::vector<std::vector<double>>& scores, bool higher_is_better);

/// Bonferroni-Dunn critical difference q_alpha * sqrt(k(k+1)/(6N)); q_alpha
/// tabulated for alpha in {0.05, 0.10} and k in [2, 10]. Two average ranks
/// further apart than this differ significantly.
double bonferroni_dunn_cd(int k, int instances, double alpha);

/// Per-instance solver score feeding the rank analysis: SR decides, AES
/// breaks ties (fewer evaluations rank better at equal SR).
struct InstanceScore {
  std::string algorithm;
  std::string type;
  std::string p_label;
  int n = 0;
  int delta = 0;
  uint64_t graph_seed = 0;
  double sr = 0.0;
  std::optional<double> aes;
};

struct RankEntry {
  std::string algorithm;
  double avg_rank = 0.0;
};
struct RankGroup {
  std::string type;
  std::string p_label;
  int instances = 0;
  double cd = 0.0;
  FriedmanResult test;
  std::vector<RankEntry> entries;  // algorithm order fixed across groups
};

/// Rank diagrams per (graph type, p) group. Groups missing some algorithm on
/// some instance are skipped through `warn`.
std::vector<RankGroup> significance_report(const std::vector<InstanceScore>& scores, double alpha,
                                           const std::function<void(const std::string&)>& warn = {});

}  // namespace tricolor

#endif  // TRICOLOR_STATS_HPP
