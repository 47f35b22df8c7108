#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "tricolor/baselines.hpp"
#include "tricolor/graph_gen.hpp"

using namespace tricolor;

namespace {

Graph complete(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph(n, std::move(edges));
}

Graph planted(int n, const char* p, uint64_t seed, GraphType type = GraphType::Eq) {
  GenSpec spec;
  spec.type = type;
  spec.n = n;
  spec.p_label = p;
  spec.seed = seed;
  return generate(spec);
}

}  // namespace

TEST_CASE("tabucol succeeds immediately on an edgeless graph") {
  const Graph g(10, {});
  const auto r = tabucol_run(g, TabucolConfig{}, 1000, 42);
  CHECK(r.success);
  CHECK(r.iterations == 0);
  CHECK(r.evals == 1);
}

TEST_CASE("tabucol never escapes K4 and stops at the budget") {
  const auto r = tabucol_run(complete(4), TabucolConfig{}, 500, 7);
  CHECK_FALSE(r.success);
  CHECK(r.iterations == 500);
  CHECK(r.final_conflicts > 0);
}

TEST_CASE("tabucol incremental conflict count matches a recount at every step") {
  const Graph g = planted(40, "0.25", 3);
  TabucolSearch search(g, TabucolConfig{}, 11);
  CHECK(search.conflicts() == search.recount_conflicts());
  for (int step = 0; step < 10000 && !search.solved(); ++step) {
    search.step();
    REQUIRE(search.conflicts() == search.recount_conflicts());
  }
}

TEST_CASE("tabu moves are applied only through aspiration") {
  const Graph g = planted(40, "0.3", 4);
  TabucolSearch search(g, TabucolConfig{}, 13);
  int tabu_applied = 0;
  for (int step = 0; step < 20000 && !search.solved(); ++step) {
    search.step();
    const auto& move = search.last_move();
    if (move.was_tabu && !move.forced_random) {
      CHECK(move.aspiration);
      ++tabu_applied;
    }
  }
  // Aspiration is rare but should exist on a non-trivial run... if not, the
  // assertion above never fired, which is fine; just ensure the run moved.
  CHECK(search.iterations() > 0);
  (void)tabu_applied;
}

TEST_CASE("tabucol colors easy planted instances") {
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    const Graph g = planted(60, "0.2", seed);
    const auto r = tabucol_run(g, TabucolConfig{}, 300000, seed);
    REQUIRE(r.success);
    CHECK(is_proper(g, r.coloring));
    CHECK(r.final_conflicts == 0);
    CHECK(r.evals >= 1);
  }
}

TEST_CASE("tabucol is deterministic in the seed") {
  const Graph g = planted(50, "0.15", 9);
  const auto a = tabucol_run(g, TabucolConfig{}, 100000, 21);
  const auto b = tabucol_run(g, TabucolConfig{}, 100000, 21);
  CHECK(a.success == b.success);
  CHECK(a.iterations == b.iterations);
  CHECK(a.coloring == b.coloring);
}

TEST_CASE("tabucol validates configuration") {
  TabucolConfig cfg;
  cfg.tabu_base = -1;
  CHECK_THROWS_AS(tabucol_run(complete(3), cfg, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(tabucol_run(complete(3), TabucolConfig{}, 0, 1), std::invalid_argument);
}

TEST_CASE("saw-ea succeeds immediately on an edgeless graph") {
  const Graph g(10, {});
  const auto r = saw_ea_run(g, SawConfig{}, 1000, 5);
  CHECK(r.success);
  CHECK(r.evals == 1);
  CHECK(r.evals_to_solution == 1);
}

TEST_CASE("saw weights never decrease") {
  const Graph g = planted(40, "0.3", 6);
  SawSearch search(g, SawConfig{}, 17);
  std::vector<long> previous(search.weights().begin(), search.weights().end());
  for (int step = 0; step < 5000 && !search.solved(); ++step) {
    search.step();
    const auto now = search.weights();
    for (size_t v = 0; v < now.size(); ++v) REQUIRE(now[v] >= previous[v]);
    previous.assign(now.begin(), now.end());
  }
  for (long w : previous) CHECK(w >= 1);
}

TEST_CASE("saw fitness reaches zero exactly on proper colorings") {
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    const Graph g = planted(30, "0.2", seed);
    const auto r = saw_ea_run(g, SawConfig{}, 300000, seed);
    if (r.success) {
      CHECK(is_proper(g, r.coloring));
      CHECK(r.final_uncolored == 0);
      CHECK(r.evals_to_solution >= 1);
    } else {
      CHECK(r.final_uncolored > 0);
    }
  }
}

TEST_CASE("saw-ea never solves K4 but keeps a partial coloring") {
  const auto r = saw_ea_run(complete(4), SawConfig{}, 2000, 3);
  CHECK_FALSE(r.success);
  CHECK(r.final_uncolored == 1);  // first-fit always colors three of four
  CHECK(r.evals == 2000);
}

TEST_CASE("saw-ea is deterministic in the seed") {
  const Graph g = planted(40, "0.25", 8);
  const auto a = saw_ea_run(g, SawConfig{}, 50000, 13);
  const auto b = saw_ea_run(g, SawConfig{}, 50000, 13);
  CHECK(a.success == b.success);
  CHECK(a.evals == b.evals);
}

TEST_CASE("saw config validation") {
  SawConfig cfg;
  cfg.weight_increment = 0;
  CHECK_THROWS_AS(saw_ea_run(complete(3), cfg, 10, 1), std::invalid_argument);
  cfg = {};
  cfg.adaptation_period = 0;
  CHECK_THROWS_AS(saw_ea_run(complete(3), cfg, 10, 1), std::invalid_argument);
}
