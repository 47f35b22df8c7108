#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "tricolor/graph.hpp"
#include "tricolor/graph_gen.hpp"

using namespace tricolor;

namespace {

GenSpec make_spec(GraphType type, int n, const std::string& p, uint64_t seed, int delta = 0) {
  GenSpec s;
  s.type = type;
  s.n = n;
  s.p_label = p;
  s.delta = delta;
  s.seed = seed;
  return s;
}

std::array<long, 3> class_sizes(const std::vector<int>& classes) {
  std::array<long, 3> sizes{0, 0, 0};
  for (int c : classes) ++sizes[c];
  return sizes;
}

// Exact class distribution of the two-stage draw: r ~ U[0,delta], then the
// class uniform in [r, 2].
std::array<double, 3> analytic_class_probs(int delta) {
  std::array<double, 3> probs{0, 0, 0};
  for (int r = 0; r <= delta; ++r)
    for (int c = r; c <= 2; ++c) probs[c] += 1.0 / ((delta + 1) * (3.0 - r));
  return probs;
}

long cross_pairs(const std::vector<int>& classes) {
  const auto sizes = class_sizes(classes);
  const long n = static_cast<long>(classes.size());
  return n * (n - 1) / 2 - sizes[0] * (sizes[0] - 1) / 2 - sizes[1] * (sizes[1] - 1) / 2 -
         sizes[2] * (sizes[2] - 1) / 2;
}

}  // namespace

TEST_CASE("decimal parsing and labels") {
  CHECK(Decimal::parse("0.008").label() == "0.008");
  CHECK(Decimal::parse("0.008").value() == doctest::Approx(0.008));
  CHECK(Decimal::parse(".5").label() == "0.5");
  CHECK(Decimal::parse("3").label() == "3");
  CHECK(Decimal::parse("0.0140").label() == "0.0140");
  CHECK(Decimal::parse("0.008").rescaled(4).label() == "0.0080");
  CHECK_THROWS_AS(Decimal::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(Decimal::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Decimal::parse("1.2.3"), std::invalid_argument);
}

TEST_CASE("equi-partite class sizes are forced for n=9") {
  Rng rng(1);
  const auto classes = assign_classes(make_spec(GraphType::Eq, 9, "0.1", 1), rng);
  const auto sizes = class_sizes(classes);
  CHECK(sizes[0] == 3);
  CHECK(sizes[1] == 3);
  CHECK(sizes[2] == 3);
}

TEST_CASE("balanced class sizes differ by at most one and extras move around") {
  std::set<int> classes_with_extra;
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    Rng rng(seed);
    const auto classes = assign_classes(make_spec(GraphType::Flat, 10, "0.1", seed), rng);
    const auto sizes = class_sizes(classes);
    CHECK(*std::max_element(sizes.begin(), sizes.end()) -
              *std::min_element(sizes.begin(), sizes.end()) <=
          1);
    for (int c = 0; c < 3; ++c)
      if (sizes[c] == 4) classes_with_extra.insert(c);
  }
  CHECK(classes_with_extra.size() == 3);  // the extra vertex is not pinned to one class
}

TEST_CASE("uniform delta=0 classes are uniform") {
  Rng rng(42);
  const int n = 100000;
  const auto classes = assign_classes(make_spec(GraphType::Uni, n, "0.1", 42), rng);
  const auto sizes = class_sizes(classes);
  const double sigma = std::sqrt((1.0 / 3) * (2.0 / 3) * n);
  for (int c = 0; c < 3; ++c) CHECK(std::abs(sizes[c] - n / 3.0) <= 3 * sigma);
}

TEST_CASE("variable graphs follow the two-stage class distribution") {
  for (int delta = 1; delta <= 2; ++delta) {
    Rng rng(7 + delta);
    const int n = 100000;
    const auto classes = assign_classes(make_spec(GraphType::Uni, n, "0.1", 7, delta), rng);
    const auto sizes = class_sizes(classes);
    const auto probs = analytic_class_probs(delta);
    for (int c = 0; c < 3; ++c) {
      const double sigma = std::sqrt(probs[c] * (1 - probs[c]) * n);
      CHECK(std::abs(sizes[c] - probs[c] * n) <= 3 * sigma);
    }
  }
  // Spot-check the delta=2 analytic values themselves.
  const auto p2 = analytic_class_probs(2);
  CHECK(p2[0] == doctest::Approx(1.0 / 9));
  CHECK(p2[1] == doctest::Approx(5.0 / 18));
  CHECK(p2[2] == doctest::Approx(11.0 / 18));
}

TEST_CASE("planted partition is a proper coloring for every type") {
  const GraphType types[] = {GraphType::Uni, GraphType::Eq, GraphType::Flat};
  for (GraphType type : types) {
    for (uint64_t seed = 1; seed <= 5; ++seed) {
      const int delta = type == GraphType::Uni ? static_cast<int>(seed % 3) : 0;
      const Graph g = generate(make_spec(type, 40, "0.15", seed, delta));
      REQUIRE(g.planted_partition().has_value());
      Coloring col(g.order());
      for (int v = 0; v < g.order(); ++v) col[v] = 1 + (*g.planted_partition())[v];
      CHECK(penalty(g, col) == 0);
      for (const auto& [a, b] : g.edges())
        CHECK((*g.planted_partition())[a] != (*g.planted_partition())[b]);
    }
  }
}

TEST_CASE("p=0 gives an empty edge set, p=1 gives every cross-class pair") {
  const Graph empty = generate(make_spec(GraphType::Eq, 60, "0", 3));
  CHECK(empty.size() == 0);
  const Graph full = generate(make_spec(GraphType::Eq, 30, "1", 3));
  CHECK(full.size() == cross_pairs(*full.planted_partition()));
  const Graph flat_full = generate(make_spec(GraphType::Flat, 9, "1", 3));
  CHECK(flat_full.size() == cross_pairs(*flat_full.planted_partition()));
  int dmin = flat_full.order(), dmax = 0;
  for (int v = 0; v < flat_full.order(); ++v) {
    dmin = std::min(dmin, flat_full.degree(v));
    dmax = std::max(dmax, flat_full.degree(v));
  }
  CHECK(dmax - dmin == 0);  // complete tripartite on equal classes is regular
}

TEST_CASE("same spec generates the identical graph") {
  const auto spec = make_spec(GraphType::Uni, 80, "0.1", 9, 1);
  const Graph a = generate(spec);
  const Graph b = generate(spec);
  CHECK(a.edges() == b.edges());
  CHECK(*a.planted_partition() == *b.planted_partition());
  const Graph c = generate(make_spec(GraphType::Uni, 80, "0.1", 10, 1));
  CHECK(a.edges() != c.edges());
}

TEST_CASE("cross-class edge frequency stays within 4 sigma of p") {
  for (uint64_t seed = 1; seed <= 6; ++seed) {
    const double p = 0.1;
    const Graph g = generate(make_spec(GraphType::Eq, 120, "0.1", seed));
    const long pairs = cross_pairs(*g.planted_partition());
    const double sigma = std::sqrt(pairs * p * (1 - p));
    CHECK(std::abs(g.size() - p * pairs) <= 4 * sigma);
  }
}

TEST_CASE("flat graphs hit the expected edge count exactly and flatten degrees") {
  int flat_no_worse = 0;
  const int trials = 20;
  for (uint64_t seed = 1; seed <= trials; ++seed) {
    const Graph flat = generate(make_spec(GraphType::Flat, 60, "0.1", seed));
    const Graph eq = generate(make_spec(GraphType::Eq, 60, "0.1", seed));
    const long pairs = cross_pairs(*flat.planted_partition());
    CHECK(flat.size() == std::lround(0.1 * pairs));
    auto spread = [](const Graph& g) {
      int lo = g.order(), hi = 0;
      for (int v = 0; v < g.order(); ++v) {
        lo = std::min(lo, g.degree(v));
        hi = std::max(hi, g.degree(v));
      }
      return hi - lo;
    };
    if (spread(flat) <= spread(eq)) ++flat_no_worse;
  }
  CHECK(flat_no_worse >= trials * 8 / 10);
}

TEST_CASE("sweep_specs builds the exact decimal grid") {
  std::vector<uint64_t> seeds;
  for (uint64_t s = 1; s <= 10; ++s) seeds.push_back(s);

  const auto medium = sweep_specs(GraphType::Eq, 500, "0.008", "0.028", "0.001", seeds);
  CHECK(medium.size() == 210);  // 21 p values x 10 seeds
  CHECK(medium.front().p_label == "0.008");
  CHECK(medium.back().p_label == "0.028");

  const auto large = sweep_specs(GraphType::Uni, 1000, "0.004", "0.014", "0.0005", seeds);
  CHECK(large.size() == 210);
  CHECK(large.front().p_label == "0.0040");
  CHECK(large[10].p_label == "0.0045");
  CHECK(large.back().p_label == "0.0140");

  const auto degenerate = sweep_specs(GraphType::Flat, 500, "0.014", "0.014", "0.001", {1});
  CHECK(degenerate.size() == 1);
  CHECK(degenerate.front().p_label == "0.014");

  CHECK_THROWS_AS(sweep_specs(GraphType::Eq, 500, "0.008", "0.028", "0.001", {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(sweep_specs(GraphType::Eq, 500, "0.028", "0.008", "0.001", {1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(sweep_specs(GraphType::Eq, 500, "0.008", "0.028", "0", {1}),
                  std::invalid_argument);

  const auto grid = decimal_grid("0.008", "0.0285", "0.001");
  CHECK(grid.size() == 21);  // floor((max-min)/step)+1
  CHECK(grid[1] == "0.0090");
}

TEST_CASE("spec validation rejects malformed parameters") {
  CHECK_THROWS_AS(generate(make_spec(GraphType::Eq, 2, "0.1", 1)), std::invalid_argument);
  CHECK_THROWS_AS(generate(make_spec(GraphType::Eq, 10, "1.5", 1)), std::invalid_argument);
  CHECK_THROWS_AS(generate(make_spec(GraphType::Eq, 10, "0.1", 1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(generate(make_spec(GraphType::Uni, 10, "0.1", 1, 3)), std::invalid_argument);
  CHECK_THROWS_AS(graph_type_from_string("triangle"), std::invalid_argument);
}

TEST_CASE("generated metadata matches the spec") {
  const Graph g = generate(make_spec(GraphType::Flat, 30, "0.05", 12));
  REQUIRE(g.meta().has_value());
  CHECK(g.meta()->type == "flat");
  CHECK(g.meta()->p_label == "0.05");
  CHECK(g.meta()->seed == 12);
  CHECK(g.instance_name() == "flat_30_0.05_12");
}
