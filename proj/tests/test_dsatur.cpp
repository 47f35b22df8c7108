#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "tricolor/dsatur.hpp"
#include "tricolor/graph.hpp"
#include "tricolor/graph_gen.hpp"
#include "tricolor/oracle.hpp"

using namespace tricolor;

namespace {

Graph complete(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph(n, std::move(edges));
}

Graph star(int leaves) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return Graph(leaves + 1, std::move(edges));
}

Graph random_graph(int n, double p, Rng& rng) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.next_double() < p) edges.emplace_back(i, j);
  return Graph(n, std::move(edges));
}

// Mycielski construction over C5: not 3-colorable, needs real backtracking.
Graph grotzsch() {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 5; ++i) edges.emplace_back(i, (i + 1) % 5);
  for (int i = 0; i < 5; ++i) {
    edges.emplace_back(i + 5, (i + 1) % 5);
    edges.emplace_back(i + 5, (i + 4) % 5);
  }
  for (int i = 0; i < 5; ++i) edges.emplace_back(10, i + 5);
  return Graph(11, std::move(edges));
}

Graph random_bipartite(int left, int right, double p, Rng& rng) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < left; ++i)
    for (int j = 0; j < right; ++j)
      if (rng.next_double() < p) edges.emplace_back(i, left + j);
  return Graph(left + right, std::move(edges));
}

// Everything decode promises: no conflicts, penalty equals the set-aside
// count, bookkeeping fields consistent with a recount.
void check_decode_contract(const Graph& g, const DecodeResult& r) {
  REQUIRE(static_cast<int>(r.coloring.size()) == g.order());
  for (const auto& [a, b] : g.edges()) {
    if (r.coloring[a] != kUncolored) CHECK(r.coloring[a] != r.coloring[b]);
  }
  CHECK(penalty(g, r.coloring) == r.penalty());
  const int colored = g.order() - static_cast<int>(r.uncolored.size());
  CHECK(static_cast<int>(r.order_colored.size()) == colored);
  std::set<int> seen(r.order_colored.begin(), r.order_colored.end());
  CHECK(static_cast<int>(seen.size()) == colored);
  for (int v : r.uncolored) {
    CHECK(r.coloring[v] == kUncolored);
    std::set<Color> neighbor_colors;
    for (int u : g.neighbors(v))
      if (r.coloring[u] != kUncolored) neighbor_colors.insert(r.coloring[u]);
    CHECK(neighbor_colors.size() == 3);  // genuinely dead
  }
  for (int v = 0; v < g.order(); ++v) {
    std::set<Color> distinct;
    for (int u : g.neighbors(v))
      if (r.coloring[u] != kUncolored) distinct.insert(r.coloring[u]);
    CHECK(r.saturation[v] == static_cast<int>(distinct.size()));
  }
}

}  // namespace

TEST_CASE("weights_to_permutation sorts by descending weight, id breaks ties") {
  CHECK(weights_to_permutation(std::vector<double>{0.2, 0.9, 0.5}) ==
        std::vector<int>{1, 2, 0});
  CHECK(weights_to_permutation(std::vector<double>{0.4, 0.4, 0.4, 0.4}) ==
        std::vector<int>{0, 1, 2, 3});
  CHECK(weights_to_permutation(std::vector<double>{0.5, 0.7, 0.5}) ==
        std::vector<int>{1, 0, 2});
}

TEST_CASE("dsatur_init_weights follows the degree ratios") {
  const auto w = dsatur_init_weights(star(4));
  REQUIRE(w.size() == 5);
  CHECK(w[0] == 1.0);
  for (int i = 1; i <= 4; ++i) CHECK(w[i] == doctest::Approx(0.25));

  const auto regular = dsatur_init_weights(complete(3));
  for (double x : regular) CHECK(x == 1.0);

  const auto isolated = dsatur_init_weights(Graph(4, {}));
  for (double x : isolated) CHECK(x == 1.0);  // degenerate max-degree-0 rule

  const auto star_weights = dsatur_init_weights(star(4));
  CHECK(*std::max_element(star_weights.begin(), star_weights.end()) == 1.0);
  CHECK(weights_to_permutation(star_weights).front() == 0);  // hub first
}

TEST_CASE("decode on K3 colors properly with any weights") {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> w(3);
    for (auto& x : w) x = rng.next_double();
    const auto r = decode(complete(3), w, rng);
    CHECK(r.penalty() == 0);
    CHECK(is_proper(complete(3), r.coloring));
  }
}

TEST_CASE("decode on K4 leaves exactly one vertex uncolored") {
  Rng rng(6);
  std::vector<double> w = {0.9, 0.8, 0.7, 0.6};
  const auto r = decode(complete(4), w, rng);
  CHECK(r.penalty() == 1);
  CHECK(r.uncolored.size() == 1);
  check_decode_contract(complete(4), r);
}

TEST_CASE("decode on an empty graph colors everything with color 1") {
  Rng rng(7);
  const Graph g(8, {});
  const auto r = decode(g, std::vector<double>(8, 0.5), rng);
  CHECK(r.penalty() == 0);
  for (Color c : r.coloring) CHECK(c == 1);
}

TEST_CASE("decode contract holds on random graphs and weights") {
  Rng rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 5 + static_cast<int>(rng.next_below(40));
    const Graph g = random_graph(n, 0.05 + 0.3 * rng.next_double(), rng);
    std::vector<double> w(n);
    for (auto& x : w) x = 0.1 + 0.9 * rng.next_double();
    const auto r = decode(g, w, rng);
    check_decode_contract(g, r);
    CHECK(r.coloring[r.order_colored.front()] == 1);  // first pick gets the lowest color
  }
}

TEST_CASE("decode is deterministic given the seed") {
  Rng g_rng(9);
  const Graph g = random_graph(25, 0.3, g_rng);
  std::vector<double> w(25, 0.5);  // all ties, so the rng does the work
  Rng a(123), b(123), c(124);
  const auto ra = decode(g, w, a);
  const auto rb = decode(g, w, b);
  CHECK(ra.coloring == rb.coloring);
  CHECK(ra.order_colored == rb.order_colored);
  const auto rc = decode(g, w, c);
  CHECK(ra.coloring != rc.coloring);  // overwhelmingly likely with all-tied weights
}

TEST_CASE("classic dsatur equals decode over the degree-ratio weights") {
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    GenSpec spec;
    spec.type = seed % 2 ? GraphType::Eq : GraphType::Uni;
    spec.n = 60;
    spec.p_label = "0.1";
    spec.seed = seed;
    const Graph g = generate(spec);
    Rng r1(555 + seed), r2(555 + seed);
    const auto via_weights = decode(g, dsatur_init_weights(g), r1);
    const auto classic = classic_dsatur(g, r2);
    CHECK(via_weights.coloring == classic.coloring);
    CHECK(via_weights.order_colored == classic.order_colored);
  }
}

TEST_CASE("classic dsatur is exact on bipartite graphs") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = random_bipartite(10 + trial, 12, 0.4, rng);
    const auto r = classic_dsatur(g, rng);
    CHECK(r.penalty() == 0);
    CHECK(is_proper(g, r.coloring));
  }
}

TEST_CASE("classic dsatur on K4") {
  Rng rng(12);
  CHECK(classic_dsatur(complete(4), rng).penalty() == 1);
}

TEST_CASE("mod_dsat on the triangle succeeds in all three runs") {
  Rng rng(13);
  const auto r = mod_dsat(complete(3), rng);
  CHECK(r.success);
  CHECK(r.runs == 3);
  CHECK(r.successes == 3);
  CHECK(r.evals_to_first_success == 1);
}

TEST_CASE("mod_dsat on K4 never succeeds") {
  Rng rng(14);
  const auto r = mod_dsat(complete(4), rng);
  CHECK_FALSE(r.success);
  CHECK(r.runs == 4);
  CHECK(r.successes == 0);
  CHECK(penalty(complete(4), r.best) == 1);
}

TEST_CASE("bk_dsat exhausts K4 without finding a coloring") {
  Rng rng(15);
  const auto r = bk_dsat(complete(4), 1000000, rng);
  CHECK_FALSE(r.success);
  CHECK(r.exhausted);
}

TEST_CASE("bk_dsat solves planted instances") {
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    GenSpec spec;
    spec.type = GraphType::Eq;
    spec.n = 30;
    spec.p_label = "0.2";
    spec.seed = seed;
    const Graph g = generate(spec);
    Rng rng(seed);
    const auto r = bk_dsat(g, 300000, rng);
    REQUIRE(r.success);
    CHECK(is_proper(g, r.coloring));
  }
}

TEST_CASE("bk_dsat with a large budget agrees with the oracle") {
  Rng rng(16);
  int yes = 0, no = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 8 + static_cast<int>(rng.next_below(7));  // up to 14
    const Graph g = random_graph(n, 0.35 + 0.3 * rng.next_double(), rng);
    const auto expected = exact_3color(g);
    REQUIRE(expected.verdict != OracleVerdict::BudgetExceeded);
    const auto r = bk_dsat(g, 100000000, rng);
    CHECK(r.success == (expected.verdict == OracleVerdict::Colorable));
    if (r.success) {
      CHECK(is_proper(g, r.coloring));
      ++yes;
    } else {
      CHECK(r.exhausted);
      ++no;
    }
  }
  CHECK(yes > 0);
  CHECK(no > 0);
}

TEST_CASE("bk_dsat stops at the backtrack budget") {
  Rng rng(17);
  const auto r = bk_dsat(grotzsch(), 5, rng);
  CHECK_FALSE(r.success);
  CHECK_FALSE(r.exhausted);
  CHECK(r.backtracks_used == 5);
  CHECK_THROWS_AS(bk_dsat(grotzsch(), 0, rng), std::invalid_argument);
}
