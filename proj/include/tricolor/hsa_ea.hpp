#ifndef TRICOLOR_HSA_EA_HPP
#define TRICOLOR_HSA_EA_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "tricolor/dsatur.hpp"
#include "tricolor/graph.hpp"
#include "tricolor/rng.hpp"

namespace tricolor {

/// One evolution-strategy individual: per-vertex weights steering the DSatur
/// decoder, and per-vertex mutation strengths. Weights live in [0.1, 1] after
/// mutation (the heuristic seed individual keeps its raw degree ratios);
/// strengths live in [epsilon0, 1].
struct Individual {
  std::vector<double> y;  // problem variables (weights)
  std::vector<double> q;  // mutation strengths
  DecodeResult decoded;
  int fitness = -1;  // uncolored-vertex count; -1 = not evaluated

  bool evaluated() const { return fitness >= 0; }
};

struct EaConfig {
  int mu = 15;
  int lambda = 100;
  int tournament_k = 3;
  double q_init = 0.03;
  double epsilon0 = 0.001;
  double tau = 0.0;        // <= 0: 1 / sqrt(2 * sqrt(n))
  double tau_prime = 0.0;  // <= 0: 1 / sqrt(2 * n)
  long max_evals = 300'000;
  int local_search_steps = 1;

  void validate() const;
  double tau_for(int n) const { return tau > 0 ? tau : 1.0 / std::sqrt(2.0 * std::sqrt(n)); }
  double tau_prime_for(int n) const {
    return tau_prime > 0 ? tau_prime : 1.0 / std::sqrt(2.0 * static_cast<double>(n));
  }
};

namespace detail {
/// Uncorrelated mutation with n step sizes: one shared lognormal draw plus a
/// per-coordinate draw scale the strengths, then each weight moves by its new
/// strength times a fresh draw. Strengths floor at epsilon0 and cap at 1;
/// weights clamp to [0.1, 1].
template <class QDraw, class YDraw>
void mutate_core(const Individual& parent, double tau, double tau_prime, double epsilon0,
                 double shared, QDraw&& q_draw, YDraw&& y_draw, Individual& child) {
  const size_t n = parent.y.size();
  child.y.resize(n);
  child.q.resize(n);
  child.fitness = -1;
  for (size_t i = 0; i < n; ++i) {
    double q = parent.q[i] * std::exp(tau_prime * shared + tau * q_draw(i));
    if (q < epsilon0) q = epsilon0;
    if (q > 1.0) q = 1.0;
    child.q[i] = q;
  }
  for (size_t i = 0; i < n; ++i) {
    double y = parent.y[i] + child.q[i] * y_draw(i);
    if (y < 0.1) y = 0.1;
    if (y > 1.0) y = 1.0;
    child.y[i] = y;
  }
}
}  // namespace detail

void mutate(const Individual& parent, const EaConfig& cfg, int n_vertices, Rng& rng,
            Individual& child);

/// Test seam taking explicit Gaussian draws.
void mutate_with_draws(const Individual& parent, const EaConfig& cfg, int n_vertices,
                       double shared, std::span<const double> q_draws,
                       std::span<const double> y_draws, Individual& child);

/// k distinct individuals drawn uniformly; lowest fitness wins, ties resolved
/// uniformly.
const Individual& tournament_select(std::span<const Individual* const> pool, int k, Rng& rng,
                                    std::vector<int>& index_scratch);

/// Root of the mean squared coordinate difference; 0 on identical vectors, 1
/// between the all-ones and all-zeros vectors.
double euclidean_distance(std::span<const double> a, std::span<const double> b);

/// Survivor choice that keeps genotype diversity: the best offspring fitness
/// class replaces the reference solution with its most distant member (when
/// not worse than the reference), then offspring rank by fitness ascending
/// and distance to the new reference descending.
struct SurvivorSelection {
  int new_ref_index = -1;  // offspring index promoted to reference, -1 = unchanged
  std::vector<int> ranked;  // all offspring indices in survivor order
};
SurvivorSelection neutral_survivor_selection(std::span<const Individual> offspring,
                                             const Individual& ref, int mu);

struct SwapBuffers {
  std::vector<int> perm;
  std::vector<int> ties;
};

/// Hybrid swap local search: take the first uncolored vertex in the weight
/// permutation, swap its genes with a maximally saturated predecessor, and
/// re-decode; the swap sticks only when the fitness strictly improves.
/// Kept/Reverted outcomes consume one evaluation, NoOp consumes none.
enum class SwapOutcome { NoOp, Kept, Reverted };
SwapOutcome hybrid_swap(const Graph& g, Individual& ind, Rng& rng, DecodeScratch& scratch,
                        Individual& trial, SwapBuffers& buffers);

struct EaState {
  std::vector<Individual> population;
  Individual ref;  // reference solution y*
  long evals_used = 0;
};

/// Population of mu: individual 0 seeded with the degree-ratio weights, the
/// rest uniform in [0.1, 1]; every strength starts at q_init. Consumes mu
/// evaluations; the fittest member becomes the reference solution.
EaState init_population(const Graph& g, const EaConfig& cfg, Rng& rng);

struct GenerationInfo {
  int generation;
  int best_offspring_fitness;
  int ref_fitness;
  double mean_q;  // over the surviving population
  long evals_used;
};
using GenerationCallback = std::function<void(const GenerationInfo&)>;

struct EaResult {
  bool success = false;
  long evals_to_solution = 0;  // valid iff success
  long evals_used = 0;
  int generations = 0;
  int final_best_fitness = 0;
  std::vector<int> best_fitness_trace;  // best offspring fitness per generation
};

/// Full (mu, lambda) generational run; terminates on a proper coloring or
/// when the evaluation budget is spent.
EaResult hsa_ea_run(const Graph& g, const EaConfig& cfg, uint64_t seed,
                    const GenerationCallback& on_generation = {});

}  // namespace tricolor

#endif  // TRICOLOR_HSA_EA_HPP
