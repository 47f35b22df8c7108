#ifndef TRICOLOR_GRAPH_GEN_HPP
#define TRICOLOR_GRAPH_GEN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tricolor/graph.hpp"
#include "tricolor/rng.hpp"

namespace tricolor {

enum class GraphType { Uni, Eq, Flat };

GraphType graph_type_from_string(const std::string& s);
std::string to_string(GraphType t);

/// Exact decimal value m * 10^-scale. Sweep grids are stepped in this
/// representation so p labels carry no floating-point drift.
struct Decimal {
  long long mantissa = 0;
  int scale = 0;  // digits after the decimal point

  double value() const;
  std::string label() const;  // fixed notation with exactly `scale` decimals
  static Decimal parse(const std::string& text);
  Decimal rescaled(int new_scale) const;  // new_scale >= scale
};

/// Instance descriptor G_{t,n,p,s} plus the variability knob Δ.
struct GenSpec {
  GraphType type = GraphType::Eq;
  int n = 0;
  std::string p_label;  // canonical decimal text for p
  int delta = 0;        // only meaningful for type Uni
  uint64_t seed = 1;

  double p() const;
  void validate() const;  // n >= 3, p in [0,1], delta in {0,1,2}, delta=0 unless Uni
};

/// Per-vertex class labels in {0,1,2}.
///  - Uni, delta 0: uniform independent classes.
///  - Uni, delta > 0: draw r uniform in [0,delta], then class uniform in [r,2]
///    (skews sizes toward higher classes; these are the "variable" graphs).
///  - Eq and Flat: sizes differ by at most one, the classes receiving the
///    extra vertices chosen at random.
std::vector<int> assign_classes(const GenSpec& spec, Rng& rng);

/// Planted 3-colorable random graph: edges join distinct classes only, so the
/// class assignment is a proper coloring by construction. Uni/Eq include each
/// cross-class pair independently with probability p. Flat places exactly
/// round(p * cross_pairs) edges by repeatedly joining lowest-degree endpoints,
/// keeping the degree spread minimal.
Graph generate(const GenSpec& spec);

/// Inclusive decimal grid from p_min to p_max; labels carry the grid's full
/// decimal precision (the widest scale among the three inputs).
std::vector<std::string> decimal_grid(const std::string& p_min, const std::string& p_max,
                                      const std::string& p_step);

/// Inclusive p-grid (stepped exactly in decimals) crossed with the seed list.
std::vector<GenSpec> sweep_specs(GraphType type, int n, const std::string& p_min,
                                 const std::string& p_max, const std::string& p_step,
                                 const std::vector<uint64_t>& seeds, int delta = 0);

}  // namespace tricolor

#endif  // TRICOLOR_GRAPH_GEN_HPP
