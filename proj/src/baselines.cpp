#include "tricolor/baselines.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace tricolor {

void TabucolConfig::validate() const {
  if (tabu_base < 0 || tabu_slope < 0)
    throw std::invalid_argument("tabu tenure parameters must be nonnegative");
}

TabucolSearch::TabucolSearch(const Graph& g, const TabucolConfig& cfg, uint64_t seed)
    : g_(g), cfg_(cfg), rng_(seed) {
  cfg_.validate();
  const int n = g_.order();
  coloring_.resize(n);
  for (auto& c : coloring_) c = 1 + static_cast<Color>(rng_.next_below(kNumColors));
  neighbor_colors_.assign(n, {0, 0, 0, 0});
  tabu_until_.assign(n, {0, 0, 0, 0});
  for (const auto& [a, b] : g_.edges()) {
    ++neighbor_colors_[a][coloring_[b]];
    ++neighbor_colors_[b][coloring_[a]];
    if (coloring_[a] == coloring_[b]) ++conflicts_;
  }
  best_conflicts_ = conflicts_;
}

int TabucolSearch::recount_conflicts() const {
  int count = 0;
  for (const auto& [a, b] : g_.edges())
    if (coloring_[a] == coloring_[b]) ++count;
  return count;
}

bool TabucolSearch::step() {
  if (conflicts_ == 0) return false;
  ++iteration_;

  conflicted_.clear();
  for (int v = 0; v < g_.order(); ++v)
    if (neighbor_colors_[v][coloring_[v]] > 0) conflicted_.push_back(v);

  // Best admissible move: lowest delta among non-tabu moves and aspirating
  // tabu moves (those beating the best conflict count seen so far).
  candidates_.clear();
  int best_delta = std::numeric_limits<int>::max();
  for (int v : conflicted_) {
    const Color from = coloring_[v];
    for (Color to = 1; to <= kNumColors; ++to) {
      if (to == from) continue;
      const int delta = neighbor_colors_[v][to] - neighbor_colors_[v][from];
      const bool tabu = tabu_until_[v][to] > iteration_;
      if (tabu && conflicts_ + delta >= best_conflicts_) continue;
      if (delta < best_delta) {
        best_delta = delta;
        candidates_.clear();
      }
      if (delta == best_delta) candidates_.push_back({v, to, delta, tabu});
    }
  }

  bool forced = false;
  if (candidates_.empty()) {
    // Everything admissible is blocked; fall back to a uniform random move.
    forced = true;
    for (int v : conflicted_) {
      const Color from = coloring_[v];
      for (Color to = 1; to <= kNumColors; ++to) {
        if (to == from) continue;
        candidates_.push_back({v, to, neighbor_colors_[v][to] - neighbor_colors_[v][from],
                               tabu_until_[v][to] > iteration_});
      }
    }
  }
  const Move move = candidates_[rng_.next_below(candidates_.size())];

  const Color from = coloring_[move.vertex];
  coloring_[move.vertex] = move.to;
  for (int u : g_.neighbors(move.vertex)) {
    --neighbor_colors_[u][from];
    ++neighbor_colors_[u][move.to];
  }
  conflicts_ += move.delta;

  const long tenure =
      cfg_.tabu_base + static_cast<long>(cfg_.tabu_slope * static_cast<double>(conflicts_));
  tabu_until_[move.vertex][from] = iteration_ + tenure;

  // A tabu move can only have been admitted through aspiration.
  last_move_ = {move.vertex, from, move.to, move.tabu, move.tabu && !forced, forced, move.delta};
  best_conflicts_ = std::min(best_conflicts_, conflicts_);
  return true;
}

TabucolResult tabucol_run(const Graph& g, const TabucolConfig& cfg, long budget, uint64_t seed) {
  if (budget < 1) throw std::invalid_argument("budget must be positive");
  TabucolSearch search(g, cfg, seed);
  TabucolResult result;
  result.evals = 1;  // initial random coloring
  while (!search.solved() && search.iterations() < budget) {
    search.step();
    ++result.evals;
  }
  result.success = search.solved();
  result.iterations = search.iterations();
  result.final_conflicts = search.conflicts();
  result.coloring = search.coloring();
  return result;
}

void SawConfig::validate() const {
  if (weight_increment < 1) throw std::invalid_argument("weight increment must be >= 1");
  if (adaptation_period < 1) throw std::invalid_argument("adaptation period must be >= 1");
}

SawSearch::SawSearch(const Graph& g, const SawConfig& cfg, uint64_t seed)
    : g_(g), cfg_(cfg), rng_(seed) {
  cfg_.validate();
  const int n = g_.order();
  weights_.assign(n, 1);
  perm_.resize(n);
  std::iota(perm_.begin(), perm_.end(), 0);
  rng_.shuffle(perm_);
  decode(perm_, coloring_, uncolored_);
  fitness_ = weight_of(uncolored_);
  evals_ = 1;
}

void SawSearch::decode(const std::vector<int>& perm, Coloring& coloring,
                       std::vector<int>& uncolored) {
  coloring.assign(g_.order(), kUncolored);
  uncolored.clear();
  for (int v : perm) {
    unsigned used = 0;
    for (int u : g_.neighbors(v)) {
      const Color c = coloring[u];
      if (c != kUncolored) used |= 1u << (c - 1);
    }
    Color c = 1;
    while (c <= kNumColors && (used & (1u << (c - 1)))) ++c;
    if (c <= kNumColors)
      coloring[v] = c;
    else
      uncolored.push_back(v);
  }
}

long SawSearch::weight_of(const std::vector<int>& uncolored) const {
  long sum = 0;
  for (int v : uncolored) sum += weights_[v];
  return sum;
}

void SawSearch::maybe_adapt() {
  if (evals_ % cfg_.adaptation_period != 0) return;
  for (int v : uncolored_) weights_[v] += cfg_.weight_increment;
  fitness_ = weight_of(uncolored_);
}

void SawSearch::step() {
  if (solved()) return;
  child_perm_ = perm_;
  const int n = static_cast<int>(perm_.size());
  const int i = static_cast<int>(rng_.next_below(n));
  int j = static_cast<int>(rng_.next_below(n - 1));
  if (j >= i) ++j;
  std::swap(child_perm_[i], child_perm_[j]);
  decode(child_perm_, child_coloring_, child_uncolored_);
  ++evals_;
  const long child_fitness = weight_of(child_uncolored_);
  if (child_fitness <= fitness_) {
    perm_.swap(child_perm_);
    coloring_.swap(child_coloring_);
    uncolored_.swap(child_uncolored_);
    fitness_ = child_fitness;
  }
  maybe_adapt();
}

SawResult saw_ea_run(const Graph& g, const SawConfig& cfg, long budget, uint64_t seed) {
  if (budget < 1) throw std::invalid_argument("budget must be positive");
  SawSearch search(g, cfg, seed);
  SawResult result;
  while (!search.solved() && search.evals() < budget) search.step();
  result.success = search.solved();
  result.evals = search.evals();
  if (result.success) result.evals_to_solution = search.evals();
  result.final_uncolored = search.uncolored_count();
  result.coloring = search.coloring();
  return result;
}

}  // namespace tricolor
