#ifndef TRICOLOR_GRAPH_HPP
#define TRICOLOR_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tricolor {

/// Vertex colors are 1, 2, 3; 0 marks an uncolored vertex.
using Color = int;
inline constexpr Color kUncolored = 0;
inline constexpr int kNumColors = 3;

using Coloring = std::vector<Color>;

/// Generator provenance carried by generated graphs: instance descriptor
/// {type}_{n}_{p}_{seed}. The edge probability is kept as the exact decimal
/// text used on the sweep grid so filenames and join keys never drift.
struct GraphMeta {
  std::string type;     // "uni", "eq" or "flat"
  std::string p_label;  // decimal text, e.g. "0.014"
  int delta = 0;
  uint64_t seed = 0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Undirected simple graph, immutable after construction. Neighbor lists are
/// sorted so iteration order is deterministic across runs.
class Graph {
 public:
  Graph() = default;

  /// Validates and normalizes: rejects self-loops, out-of-range endpoints and
  /// duplicate edges; stores each edge once as (min, max), sorted.
  Graph(int n, std::vector<std::pair<int, int>> edges,
        std::optional<std::vector<int>> planted_partition = std::nullopt,
        std::optional<GraphMeta> meta = std::nullopt);

  int order() const { return n_; }
  long size() const { return static_cast<long>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  std::span<const int> neighbors(int v) const {
    return {adj_flat_.data() + adj_offset_[v], adj_flat_.data() + adj_offset_[v + 1]};
  }
  int degree(int v) const { return adj_offset_[v + 1] - adj_offset_[v]; }
  int max_degree() const { return max_degree_; }
  bool has_edge(int u, int v) const;

  const std::optional<std::vector<int>>& planted_partition() const { return planted_; }
  const std::optional<GraphMeta>& meta() const { return meta_; }

  /// "eq_500_0.014_1" when generator metadata is present.
  std::string instance_name() const;

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> adj_flat_;
  std::vector<int> adj_offset_{0};
  int max_degree_ = 0;
  std::optional<std::vector<int>> planted_;
  std::optional<GraphMeta> meta_;
};

/// Number of vertices that violate at least one constraint: a vertex counts
/// when it is uncolored or shares its color with a neighbor. Zero exactly on
/// proper colorings. Throws std::invalid_argument on length mismatch.
int penalty(const Graph& g, const Coloring& coloring);

/// True iff every vertex is colored and no edge is monochromatic.
bool is_proper(const Graph& g, const Coloring& coloring);

/// DIMACS .col writer/reader. `c meta`/`c planted` comment lines carry the
/// generator metadata and the planted partition through round trips; other
/// comments are ignored. Vertices are 1-based on disk, 0-based in memory.
void write_dimacs(const Graph& g, std::ostream& out);
Graph read_dimacs(std::istream& in);

void write_dimacs_file(const Graph& g, const std::string& path);
Graph read_dimacs_file(const std::string& path);

}  // namespace tricolor

#endif  // TRICOLOR_GRAPH_HPP
