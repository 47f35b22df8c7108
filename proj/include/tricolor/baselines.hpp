#ifndef TRICOLOR_BASELINES_HPP
#define TRICOLOR_BASELINES_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "tricolor/graph.hpp"
#include "tricolor/rng.hpp"

namespace tricolor {

struct TabucolConfig {
  int tabu_base = 7;
  double tabu_slope = 0.6;  // tenure = base + slope * current conflict count

  void validate() const;
};

/// Tabu search over full 3-colorings: each iteration recolors one conflicted
/// vertex with the move that most reduces the conflicting-edge count, skipping
/// tabu moves unless they reach a new global best (aspiration). The reverted
/// (vertex, old color) pair stays tabu for a conflict-proportional tenure.
class TabucolSearch {
 public:
  TabucolSearch(const Graph& g, const TabucolConfig& cfg, uint64_t seed);

  /// One iteration; false when there is nothing to move (already proper).
  bool step();

  int conflicts() const { return conflicts_; }
  int recount_conflicts() const;  // from scratch, for bookkeeping checks
  bool solved() const { return conflicts_ == 0; }
  long iterations() const { return iteration_; }
  const Coloring& coloring() const { return coloring_; }

  struct MoveInfo {
    int vertex = -1;
    Color from = kUncolored, to = kUncolored;
    bool was_tabu = false;
    bool aspiration = false;
    bool forced_random = false;  // every move was tabu, picked one anyway
    int delta = 0;
  };
  const MoveInfo& last_move() const { return last_move_; }

 private:
  const Graph& g_;
  TabucolConfig cfg_;
  Rng rng_;
  Coloring coloring_;
  std::vector<std::array<int, 4>> neighbor_colors_;  // gamma[v][c]
  std::vector<std::array<long, 4>> tabu_until_;
  int conflicts_ = 0;
  long iteration_ = 0;
  int best_conflicts_ = 0;
  MoveInfo last_move_;
  std::vector<int> conflicted_;
  struct Move {
    int vertex;
    Color to;
    int delta;
    bool tabu;
  };
  std::vector<Move> candidates_;
};

struct TabucolResult {
  bool success = false;
  long iterations = 0;
  long evals = 0;  // 1 for the initial coloring + 1 per iteration
  int final_conflicts = 0;
  Coloring coloring;
};
TabucolResult tabucol_run(const Graph& g, const TabucolConfig& cfg, long budget, uint64_t seed);

struct SawConfig {
  long weight_increment = 1;
  long adaptation_period = 250;  // evaluations between weight updates

  void validate() const;
};

/// Stepwise adaptation of weights on a (1+1) permutation EA: a greedy
/// first-fit pass decodes permutations, fitness is the weight sum of the
/// vertices it leaves uncolored, and the weights of the incumbent's uncolored
/// vertices grow periodically so the hard vertices get colored first.
class SawSearch {
 public:
  SawSearch(const Graph& g, const SawConfig& cfg, uint64_t seed);

  void step();  // one offspring: swap mutation, decode, (<=) replacement
  bool solved() const { return uncolored_.empty(); }
  long evals() const { return evals_; }
  long fitness() const { return fitness_; }
  std::span<const long> weights() const { return weights_; }
  const Coloring& coloring() const { return coloring_; }
  int uncolored_count() const { return static_cast<int>(uncolored_.size()); }

 private:
  void decode(const std::vector<int>& perm, Coloring& coloring, std::vector<int>& uncolored);
  long weight_of(const std::vector<int>& uncolored) const;
  void maybe_adapt();

  const Graph& g_;
  SawConfig cfg_;
  Rng rng_;
  std::vector<long> weights_;
  std::vector<int> perm_;
  Coloring coloring_;
  std::vector<int> uncolored_;
  long fitness_ = 0;
  long evals_ = 0;
  std::vector<int> child_perm_;
  Coloring child_coloring_;
  std::vector<int> child_uncolored_;
};

struct SawResult {
  bool success = false;
  long evals = 0;
  long evals_to_solution = 0;  // valid iff success
  int final_uncolored = 0;
  Coloring coloring;
};
SawResult saw_ea_run(const Graph& g, const SawConfig& cfg, long budget, uint64_t seed);

}  // namespace tricolor

#endif  // TRICOLOR_BASELINES_HPP
