#include "tricolor/oracle.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <vector>

namespace tricolor {

namespace {

struct Search {
  const Graph& g;
  long budget;
  long nodes = 0;
  bool exceeded = false;
  std::vector<int> order;          // vertices in branching order
  std::vector<Color> color;        // by vertex id
  std::vector<std::array<int, 4>> block;  // block[v][c] = colored neighbors of v using c
  std::vector<int> blocked_colors;        // count of distinct blocked colors per vertex

  explicit Search(const Graph& graph, long node_budget) : g(graph), budget(node_budget) {
    const int n = g.order();
    order.resize(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return g.degree(a) > g.degree(b); });
    color.assign(n, kUncolored);
    block.assign(n, {0, 0, 0, 0});
    blocked_colors.assign(n, 0);
  }

  bool assign(int v, Color c) {
    color[v] = c;
    bool ok = true;
    for (int u : g.neighbors(v)) {
      if (color[u] != kUncolored) continue;
      if (block[u][c]++ == 0 && ++blocked_colors[u] == kNumColors) ok = false;
    }
    return ok;  // false: some uncolored neighbor has no color left
  }

  void unassign(int v, Color c) {
    for (int u : g.neighbors(v)) {
      if (color[u] != kUncolored) continue;
      if (--block[u][c] == 0) --blocked_colors[u];
    }
    color[v] = kUncolored;
  }

  bool dfs(int idx) {
    if (idx == g.order()) return true;
    const int v = order[idx];
    // Symmetry: first vertex fixed to color 1, second capped at color 2.
    const Color max_color = idx == 0 ? 1 : idx == 1 ? 2 : kNumColors;
    for (Color c = 1; c <= max_color; ++c) {
      if (block[v][c] > 0) continue;
      if (++nodes > budget) {
        exceeded = true;
        return false;
      }
      const bool viable = assign(v, c);
      if (viable && dfs(idx + 1)) return true;
      unassign(v, c);
      if (exceeded) return false;
    }
    return false;
  }
};

}  // namespace

OracleResult exact_3color(const Graph& g, long node_budget) {
  OracleResult result;
  if (g.order() == 0) {
    result.verdict = OracleVerdict::Colorable;
    result.witness = Coloring{};
    return result;
  }
  Search search(g, node_budget);
  const bool found = search.dfs(0);
  result.nodes_expanded = search.nodes;
  if (found) {
    result.verdict = OracleVerdict::Colorable;
    result.witness = search.color;
  } else if (search.exceeded) {
    result.verdict = OracleVerdict::BudgetExceeded;
  } else {
    result.verdict = OracleVerdict::NotColorable;
  }
  return result;
}

}  // namespace tricolor
