#ifndef TRICOLOR_DSATUR_HPP
#define TRICOLOR_DSATUR_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "tricolor/graph.hpp"
#include "tricolor/rng.hpp"

namespace tricolor {

/// Outcome of one constructive coloring pass.
struct DecodeResult {
  Coloring coloring;
  std::vector<int> order_colored;  // vertices in the order they were colored
  std::vector<int> saturation;     // distinct colors among colored neighbors, at pass end
  std::vector<int> uncolored;      // vertices skipped (all three colors blocked)

  int penalty() const { return static_cast<int>(uncolored.size()); }
};

/// Vertex ids sorted by descending weight; ties keep ascending id order.
std::vector<int> weights_to_permutation(std::span<const double> weights);

/// deg(v) / max_degree, so decoding these weights reproduces classic DSatur.
/// All weights are 1 on a graph with no edges.
std::vector<double> dsatur_init_weights(const Graph& g);

/// Reusable buffers for the decode hot path (one per thread/run).
struct DecodeScratch {
  void reset(int n);

  struct Entry {
    double key;
    int v;
  };
  std::vector<uint8_t> satmask_;
  std::vector<uint8_t> state_;
  std::vector<Entry> bucket_[3];  // pending candidates per saturation level
  std::vector<Entry> ties_;
  std::vector<double> degree_score_;
};

/// Greedy DSatur pass steered by weights: pick the pending vertex with the
/// highest saturation, break ties by weight, then uniformly at random; color
/// it with the lowest free color. A vertex whose neighbors already use all
/// three colors is set aside and never revisited, so the result carries no
/// conflicts and its penalty equals the number of set-aside vertices.
void decode_into(const Graph& g, std::span<const double> weights, Rng& rng,
                 DecodeScratch& scratch, DecodeResult& out);
DecodeResult decode(const Graph& g, std::span<const double> weights, Rng& rng);

/// Same pass with the tie broken by vertex degree instead of weight.
void classic_dsatur_into(const Graph& g, Rng& rng, DecodeScratch& scratch, DecodeResult& out);
DecodeResult classic_dsatur(const Graph& g, Rng& rng);

/// n single-pass runs, run j forcing vertex j to be colored first; each run
/// counts as one evaluation.
struct ModDsatResult {
  bool success = false;
  int runs = 0;
  int successes = 0;
  long evals_to_first_success = 0;  // valid iff success
  Coloring best;
};
ModDsatResult mod_dsat(const Graph& g, Rng& rng);

/// Chronological backtracking DSatur on three colors. A backtrack is one
/// resumption of an earlier vertex that still has an untried color; the run
/// fails once `max_backtracks` of them happen.
struct BkDsatResult {
  bool success = false;
  bool exhausted = false;  // search space fully explored (graph not 3-colorable)
  long backtracks_used = 0;
  long assignments = 0;
  Coloring coloring;
};
BkDsatResult bk_dsat(const Graph& g, long max_backtracks, Rng& rng);

}  // namespace tricolor

#endif  // TRICOLOR_DSATUR_HPP
