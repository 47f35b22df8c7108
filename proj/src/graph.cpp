#include "tricolor/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace tricolor {

Graph::Graph(int n, std::vector<std::pair<int, int>> edges,
             std::optional<std::vector<int>> planted_partition, std::optional<GraphMeta> meta)
    : n_(n), edges_(std::move(edges)), planted_(std::move(planted_partition)), meta_(std::move(meta)) {
  if (n_ < 0) throw std::invalid_argument("negative vertex count");
  for (auto& [a, b] : edges_) {
    if (a < 0 || a >= n_ || b < 0 || b >= n_)
      throw std::invalid_argument("edge endpoint out of range");
    if (a == b) throw std::invalid_argument("self-loop");
    if (a > b) std::swap(a, b);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw std::invalid_argument("duplicate edge");

  std::vector<int> deg(n_, 0);
  for (const auto& [a, b] : edges_) {
    ++deg[a];
    ++deg[b];
  }
  adj_offset_.assign(n_ + 1, 0);
  for (int v = 0; v < n_; ++v) adj_offset_[v + 1] = adj_offset_[v] + deg[v];
  adj_flat_.resize(edges_.size() * 2);
  std::vector<int> cursor(adj_offset_.begin(), adj_offset_.end() - 1);
  for (const auto& [a, b] : edges_) {
    adj_flat_[cursor[a]++] = b;
    adj_flat_[cursor[b]++] = a;
  }
  for (int v = 0; v < n_; ++v)
    std::sort(adj_flat_.begin() + adj_offset_[v], adj_flat_.begin() + adj_offset_[v + 1]);
  max_degree_ = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());

  if (planted_) {
    if (static_cast<int>(planted_->size()) != n_)
      throw std::invalid_argument("planted partition length mismatch");
    for (int c : *planted_)
      if (c < 0 || c > 2) throw std::invalid_argument("planted class out of range");
    for (const auto& [a, b] : edges_)
      if ((*planted_)[a] == (*planted_)[b])
        throw std::invalid_argument("edge inside a planted class");
  }
}

bool Graph::has_edge(int u, int v) const {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::string Graph::instance_name() const {
  if (!meta_) return "graph_" + std::to_string(n_);
  return meta_->type + "_" + std::to_string(n_) + "_" + meta_->p_label + "_" +
         std::to_string(meta_->seed);
}

int penalty(const Graph& g, const Coloring& coloring) {
  if (static_cast<int>(coloring.size()) != g.order())
    throw std::invalid_argument("coloring length does not match vertex count");
  int count = 0;
  for (int v = 0; v < g.order(); ++v) {
    const Color c = coloring[v];
    if (c == kUncolored) {
      ++count;
      continue;
    }
    for (int u : g.neighbors(v)) {
      if (coloring[u] == c) {
        ++count;
        break;
      }
    }
  }
  return count;
}

bool is_proper(const Graph& g, const Coloring& coloring) {
  if (static_cast<int>(coloring.size()) != g.order())
    throw std::invalid_argument("coloring length does not match vertex count");
  for (int v = 0; v < g.order(); ++v)
    if (coloring[v] == kUncolored) return false;
  for (const auto& [a, b] : g.edges())
    if (coloring[a] == coloring[b]) return false;
  return true;
}

void write_dimacs(const Graph& g, std::ostream& out) {
  out << "p edge " << g.order() << " " << g.size() << "\n";
  if (g.meta()) {
    const auto& m = *g.meta();
    out << "c meta type=" << m.type << " p=" << m.p_label << " delta=" << m.delta
        << " seed=" << m.seed << "\n";
  }
  if (g.planted_partition()) {
    out << "c planted";
    for (int c : *g.planted_partition()) out << " " << c;
    out << "\n";
  }
  for (const auto& [a, b] : g.edges()) out << "e " << a + 1 << " " << b + 1 << "\n";
}

Graph read_dimacs(std::istream& in) {
  int n = -1;
  long declared_edges = -1;
  std::vector<std::pair<int, int>> edges;
  std::optional<std::vector<int>> planted;
  std::optional<GraphMeta> meta;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "c") {
      std::string kind;
      ls >> kind;
      if (kind == "planted") {
        std::vector<int> classes;
        int c;
        while (ls >> c) classes.push_back(c);
        planted = std::move(classes);
      } else if (kind == "meta") {
        GraphMeta m;
        std::string kv;
        while (ls >> kv) {
          const auto eq = kv.find('=');
          if (eq == std::string::npos) throw ParseError(lineno, "malformed meta entry: " + kv);
          const std::string key = kv.substr(0, eq);
          const std::string val = kv.substr(eq + 1);
          try {
            if (key == "type") m.type = val;
            else if (key == "p") m.p_label = val;
            else if (key == "delta") m.delta = std::stoi(val);
            else if (key == "seed") m.seed = std::stoull(val);
            else throw ParseError(lineno, "unknown meta key: " + key);
          } catch (const std::invalid_argument&) {
            throw ParseError(lineno, "malformed meta value: " + kv);
          }
        }
        meta = std::move(m);
      }
      continue;
    }
    if (tag == "p") {
      if (n >= 0) throw ParseError(lineno, "duplicate problem line");
      std::string fmt;
      if (!(ls >> fmt >> n >> declared_edges) || fmt != "edge" || n < 0 || declared_edges < 0)
        throw ParseError(lineno, "malformed header, expected 'p edge <n> <m>'");
      continue;
    }
    if (tag == "e") {
      if (n < 0) throw ParseError(lineno, "edge before problem line");
      int a, b;
      if (!(ls >> a >> b)) throw ParseError(lineno, "malformed edge line");
      if (a < 1 || a > n || b < 1 || b > n)
        throw ParseError(lineno, "vertex index out of range");
      if (a == b) throw ParseError(lineno, "self-loop");
      edges.emplace_back(a - 1, b - 1);
      continue;
    }
    throw ParseError(lineno, "unrecognized line tag: " + tag);
  }
  if (n < 0) throw ParseError(lineno, "missing problem line");
  if (declared_edges != static_cast<long>(edges.size()))
    throw ParseError(lineno, "edge count does not match header");
  {
    auto sorted = edges;
    for (auto& [a, b] : sorted)
      if (a > b) std::swap(a, b);
    std::sort(sorted.begin(), sorted.end());
    const auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end())
      throw ParseError(lineno, "duplicate edge " + std::to_string(dup->first + 1) + " " +
                                   std::to_string(dup->second + 1));
  }
  if (planted && static_cast<int>(planted->size()) != n)
    throw ParseError(lineno, "planted partition length does not match vertex count");
  try {
    return Graph(n, std::move(edges), std::move(planted), std::move(meta));
  } catch (const std::invalid_argument& e) {
    throw ParseError(lineno, e.what());
  }
}

void write_dimacs_file(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_dimacs(g, out);
  if (!out) throw std::runtime_error("write failed: " + path);
}

Graph read_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return read_dimacs(in);
}

}  // namespace tricolor
