#include "tricolor/hsa_ea.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace tricolor {

void EaConfig::validate() const {
  if (mu < 1 || lambda < 1) throw std::invalid_argument("mu and lambda must be positive");
  if (mu >= lambda) throw std::invalid_argument("mu must be smaller than lambda");
  if (tournament_k < 1 || tournament_k > mu + 1)
    throw std::invalid_argument("tournament size must be in [1, mu+1]");
  if (q_init <= 0 || epsilon0 <= 0) throw std::invalid_argument("rates must be positive");
  if (q_init > 1.0 || epsilon0 > 1.0) throw std::invalid_argument("rates must not exceed 1");
  if (max_evals < 1) throw std::invalid_argument("max_evals must be positive");
  if (local_search_steps < 0) throw std::invalid_argument("local_search_steps must be >= 0");
}

void mutate(const Individual& parent, const EaConfig& cfg, int n_vertices, Rng& rng,
            Individual& child) {
  const double shared = rng.next_normal();
  detail::mutate_core(
      parent, cfg.tau_for(n_vertices), cfg.tau_prime_for(n_vertices), cfg.epsilon0, shared,
      [&](size_t) { return rng.next_normal(); }, [&](size_t) { return rng.next_normal(); },
      child);
}

void mutate_with_draws(const Individual& parent, const EaConfig& cfg, int n_vertices,
                       double shared, std::span<const double> q_draws,
                       std::span<const double> y_draws, Individual& child) {
  if (q_draws.size() != parent.q.size() || y_draws.size() != parent.y.size())
    throw std::invalid_argument("draw vectors must match the genotype length");
  detail::mutate_core(
      parent, cfg.tau_for(n_vertices), cfg.tau_prime_for(n_vertices), cfg.epsilon0, shared,
      [&](size_t i) { return q_draws[i]; }, [&](size_t i) { return y_draws[i]; }, child);
}

const Individual& tournament_select(std::span<const Individual* const> pool, int k, Rng& rng,
                                    std::vector<int>& index_scratch) {
  const int m = static_cast<int>(pool.size());
  if (k < 1 || k > m) throw std::invalid_argument("tournament size exceeds pool");
  index_scratch.resize(m);
  std::iota(index_scratch.begin(), index_scratch.end(), 0);
  // Partial Fisher-Yates: the first k slots become the drawn sample.
  for (int i = 0; i < k; ++i) {
    const int j = i + static_cast<int>(rng.next_below(static_cast<uint64_t>(m - i)));
    std::swap(index_scratch[i], index_scratch[j]);
  }
  int best_fitness = std::numeric_limits<int>::max();
  int tied = 0;
  int winner = -1;
  for (int i = 0; i < k; ++i) {
    const int f = pool[index_scratch[i]]->fitness;
    if (f < best_fitness) {
      best_fitness = f;
      winner = index_scratch[i];
      tied = 1;
    } else if (f == best_fitness) {
      // Reservoir pick keeps ties uniform in a single pass.
      ++tied;
      if (rng.next_below(tied) == 0) winner = index_scratch[i];
    }
  }
  return *pool[winner];
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  if (a.empty()) return 0.0;
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(a.size()));
}

SurvivorSelection neutral_survivor_selection(std::span<const Individual> offspring,
                                             const Individual& ref, int mu) {
  if (static_cast<int>(offspring.size()) < mu)
    throw std::invalid_argument("fewer offspring than survivors requested");
  for (const auto& ind : offspring)
    if (!ind.evaluated()) throw std::invalid_argument("offspring must be evaluated");

  SurvivorSelection sel;
  int best = std::numeric_limits<int>::max();
  for (const auto& ind : offspring) best = std::min(best, ind.fitness);

  // Phase 1: among the best neutral set, the member farthest from the old
  // reference becomes the new reference (only if not worse than it).
  if (best <= ref.fitness) {
    double far = -1.0;
    for (size_t i = 0; i < offspring.size(); ++i) {
      if (offspring[i].fitness != best) continue;
      const double d = euclidean_distance(offspring[i].y, ref.y);
      if (d > far) {
        far = d;
        sel.new_ref_index = static_cast<int>(i);
      }
    }
  }
  const Individual& anchor = sel.new_ref_index >= 0
                                 ? offspring[sel.new_ref_index]
                                 : ref;

  // Phase 2: fitness ascending, distance to the new reference descending.
  std::vector<double> dist(offspring.size());
  for (size_t i = 0; i < offspring.size(); ++i)
    dist[i] = euclidean_distance(offspring[i].y, anchor.y);
  sel.ranked.resize(offspring.size());
  std::iota(sel.ranked.begin(), sel.ranked.end(), 0);
  std::sort(sel.ranked.begin(), sel.ranked.end(), [&](int a, int b) {
    if (offspring[a].fitness != offspring[b].fitness)
      return offspring[a].fitness < offspring[b].fitness;
    if (dist[a] != dist[b]) return dist[a] > dist[b];
    return a < b;
  });
  return sel;
}

SwapOutcome hybrid_swap(const Graph& g, Individual& ind, Rng& rng, DecodeScratch& scratch,
                        Individual& trial, SwapBuffers& buffers) {
  if (!ind.evaluated()) throw std::invalid_argument("hybrid_swap needs an evaluated individual");
  if (ind.decoded.uncolored.empty()) return SwapOutcome::NoOp;

  auto& perm = buffers.perm;
  perm.resize(ind.y.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) { return ind.y[a] > ind.y[b]; });

  size_t pos = 0;
  while (pos < perm.size() && ind.decoded.coloring[perm[pos]] != kUncolored) ++pos;
  if (pos == 0 || pos >= perm.size()) return SwapOutcome::NoOp;
  const int uncolored_vertex = perm[pos];

  // Most saturated predecessor; uniform choice among ties.
  auto& ties = buffers.ties;
  ties.clear();
  int best_sat = -1;
  for (size_t i = 0; i < pos; ++i) {
    const int v = perm[i];
    const int sat = ind.decoded.saturation[v];
    if (sat > best_sat) {
      best_sat = sat;
      ties.clear();
      ties.push_back(v);
    } else if (sat == best_sat) {
      ties.push_back(v);
    }
  }
  const int partner = ties[rng.next_below(ties.size())];

  trial.y = ind.y;
  trial.q = ind.q;
  std::swap(trial.y[uncolored_vertex], trial.y[partner]);
  std::swap(trial.q[uncolored_vertex], trial.q[partner]);
  decode_into(g, trial.y, rng, scratch, trial.decoded);
  trial.fitness = trial.decoded.penalty();

  if (trial.fitness < ind.fitness) {
    std::swap(ind, trial);
    return SwapOutcome::Kept;
  }
  return SwapOutcome::Reverted;
}

EaState init_population(const Graph& g, const EaConfig& cfg, Rng& rng) {
  cfg.validate();
  const int n = g.order();
  EaState st;
  st.population.resize(cfg.mu);
  DecodeScratch scratch;
  for (int i = 0; i < cfg.mu; ++i) {
    Individual& ind = st.population[i];
    if (i == 0) {
      ind.y = dsatur_init_weights(g);
    } else {
      ind.y.resize(n);
      for (auto& y : ind.y) y = rng.next_range(0.1, 1.0);
    }
    ind.q.assign(n, cfg.q_init);
    decode_into(g, ind.y, rng, scratch, ind.decoded);
    ind.fitness = ind.decoded.penalty();
    ++st.evals_used;
  }
  int best = 0;
  for (int i = 1; i < cfg.mu; ++i)
    if (st.population[i].fitness < st.population[best].fitness) best = i;
  st.ref = st.population[best];
  return st;
}

EaResult hsa_ea_run(const Graph& g, const EaConfig& cfg, uint64_t seed,
                    const GenerationCallback& on_generation) {
  cfg.validate();
  Rng rng(seed);
  EaResult result;

  EaState st = init_population(g, cfg, rng);
  result.evals_used = st.evals_used;
  int global_best = st.ref.fitness;
  if (st.ref.fitness == 0) {
    result.success = true;
    result.evals_to_solution = st.evals_used;  // whole initialization counts
    result.final_best_fitness = 0;
    return result;
  }

  DecodeScratch scratch;
  SwapBuffers swap_buffers;
  std::vector<int> tournament_scratch;
  std::vector<Individual> offspring(cfg.lambda);
  Individual trial;
  std::vector<const Individual*> pool(cfg.mu + 1);
  std::vector<int> placement;

  while (result.evals_used < cfg.max_evals) {
    ++result.generations;
    for (int i = 0; i < cfg.mu; ++i) pool[i] = &st.population[i];
    pool[cfg.mu] = &st.ref;

    int best_offspring = std::numeric_limits<int>::max();
    bool budget_hit = false;
    for (int j = 0; j < cfg.lambda; ++j) {
      const Individual& parent =
          tournament_select(pool, cfg.tournament_k, rng, tournament_scratch);
      Individual& child = offspring[j];
      mutate(parent, cfg, g.order(), rng, child);
      decode_into(g, child.y, rng, scratch, child.decoded);
      child.fitness = child.decoded.penalty();
      ++result.evals_used;
      best_offspring = std::min(best_offspring, child.fitness);
      global_best = std::min(global_best, child.fitness);
      if (child.fitness == 0) {
        result.success = true;
        result.evals_to_solution = result.evals_used;
        result.final_best_fitness = 0;
        return result;
      }
      for (int step = 0; step < cfg.local_search_steps; ++step) {
        const SwapOutcome outcome = hybrid_swap(g, child, rng, scratch, trial, swap_buffers);
        if (outcome == SwapOutcome::NoOp) break;
        ++result.evals_used;
        best_offspring = std::min(best_offspring, child.fitness);
        global_best = std::min(global_best, child.fitness);
        if (child.fitness == 0) {
          result.success = true;
          result.evals_to_solution = result.evals_used;
          result.final_best_fitness = 0;
          return result;
        }
        if (result.evals_used >= cfg.max_evals) break;
      }
      if (result.evals_used >= cfg.max_evals && j + 1 < cfg.lambda) {
        budget_hit = true;
        break;
      }
    }
    result.best_fitness_trace.push_back(best_offspring);
    if (budget_hit) break;

    const SurvivorSelection sel = neutral_survivor_selection(offspring, st.ref, cfg.mu);
    if (sel.new_ref_index >= 0) st.ref = offspring[sel.new_ref_index];
    placement.assign(sel.ranked.begin(), sel.ranked.begin() + cfg.mu);
    rng.shuffle(placement);  // survivors take random positions
    for (int i = 0; i < cfg.mu; ++i) st.population[i] = offspring[placement[i]];

    if (on_generation) {
      double mean_q = 0.0;
      for (const auto& ind : st.population)
        mean_q += std::accumulate(ind.q.begin(), ind.q.end(), 0.0) /
                  static_cast<double>(ind.q.size());
      mean_q /= static_cast<double>(cfg.mu);
      on_generation({result.generations, best_offspring, st.ref.fitness, mean_q,
                     result.evals_used});
    }
  }
  result.final_best_fitness = global_best;
  return result;
}

}  // namespace tricolor
