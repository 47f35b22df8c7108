#ifndef TRICOLOR_ORACLE_HPP
#define TRICOLOR_ORACLE_HPP

#include <optional>

#include "tricolor/graph.hpp"

namespace tricolor {

enum class OracleVerdict { Colorable, NotColorable, BudgetExceeded };

struct OracleResult {
  OracleVerdict verdict = OracleVerdict::BudgetExceeded;
  std::optional<Coloring> witness;  // proper coloring when Colorable
  long nodes_expanded = 0;
};

/// Exact 3-colorability decision by backtracking over vertices in descending
/// degree order with forward pruning. Symmetry broken by fixing the first
/// vertex to color 1 and capping the second branching vertex at color 2.
/// Intended for n up to about 60; returns BudgetExceeded once `node_budget`
/// search nodes have been expanded without resolution.
OracleResult exact_3color(const Graph& g, long node_budget = 50'000'000);

}  // namespace tricolor

#endif  // TRICOLOR_ORACLE_HPP
