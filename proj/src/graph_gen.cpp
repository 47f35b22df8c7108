#include "tricolor/graph_gen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tricolor {

GraphType graph_type_from_string(const std::string& s) {
  if (s == "uni") return GraphType::Uni;
  if (s == "eq") return GraphType::Eq;
  if (s == "flat") return GraphType::Flat;
  throw std::invalid_argument("unknown graph type: " + s + " (expected uni, eq or flat)");
}

std::string to_string(GraphType t) {
  switch (t) {
    case GraphType::Uni: return "uni";
    case GraphType::Eq: return "eq";
    case GraphType::Flat: return "flat";
  }
  return "?";
}

double Decimal::value() const {
  double v = static_cast<double>(mantissa);
  for (int i = 0; i < scale; ++i) v /= 10.0;
  return v;
}

std::string Decimal::label() const {
  const bool neg = mantissa < 0;
  std::string digits = std::to_string(neg ? -mantissa : mantissa);
  if (scale == 0) return (neg ? "-" : "") + digits;
  if (static_cast<int>(digits.size()) <= scale)
    digits.insert(0, scale - digits.size() + 1, '0');
  digits.insert(digits.size() - scale, ".");
  return (neg ? "-" : "") + digits;
}

Decimal Decimal::parse(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty decimal");
  size_t i = 0;
  bool neg = false;
  if (text[i] == '+' || text[i] == '-') {
    neg = text[i] == '-';
    ++i;
  }
  long long mantissa = 0;
  int scale = 0;
  bool seen_digit = false, seen_dot = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '.') {
      if (seen_dot) throw std::invalid_argument("malformed decimal: " + text);
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      mantissa = mantissa * 10 + (c - '0');
      if (seen_dot) ++scale;
      seen_digit = true;
    } else {
      throw std::invalid_argument("malformed decimal: " + text);
    }
  }
  if (!seen_digit) throw std::invalid_argument("malformed decimal: " + text);
  return {neg ? -mantissa : mantissa, scale};
}

Decimal Decimal::rescaled(int new_scale) const {
  if (new_scale < scale) throw std::invalid_argument("cannot reduce decimal scale");
  long long m = mantissa;
  for (int i = scale; i < new_scale; ++i) m *= 10;
  return {m, new_scale};
}

double GenSpec::p() const { return Decimal::parse(p_label).value(); }

void GenSpec::validate() const {
  if (n < 3) throw std::invalid_argument("n must be at least 3");
  const double pv = p();
  if (pv < 0.0 || pv > 1.0) throw std::invalid_argument("p must be in [0,1]");
  if (delta < 0 || delta > 2) throw std::invalid_argument("delta must be in {0,1,2}");
  if (delta != 0 && type != GraphType::Uni)
    throw std::invalid_argument("delta is only meaningful for uniform graphs");
}

namespace {

// Stream ids within one generator seed.
constexpr uint64_t kClassStream = 0;
constexpr uint64_t kEdgeStream = 1;

std::vector<int> balanced_classes(int n, Rng& rng) {
  const int base = n / 3;
  const int extra = n % 3;
  int extra_to[3] = {0, 0, 0};
  // Choose which classes receive the extra vertices.
  int ids[3] = {0, 1, 2};
  for (int i = 0; i < extra; ++i) {
    const int j = i + static_cast<int>(rng.next_below(3 - i));
    std::swap(ids[i], ids[j]);
    extra_to[ids[i]] = 1;
  }
  std::vector<int> labels;
  labels.reserve(n);
  for (int c = 0; c < 3; ++c) labels.insert(labels.end(), base + extra_to[c], c);
  rng.shuffle(labels);
  return labels;
}

long count_cross_pairs(const std::vector<int>& classes) {
  long sizes[3] = {0, 0, 0};
  for (int c : classes) ++sizes[c];
  const long n = static_cast<long>(classes.size());
  long intra = 0;
  for (long s : sizes) intra += s * (s - 1) / 2;
  return n * (n - 1) / 2 - intra;
}

// Joins lowest-degree endpoints first: pick a minimum-degree vertex that
// still has an unused cross-class partner, then a minimum-degree partner.
std::vector<std::pair<int, int>> flat_edges(const std::vector<int>& classes, long target,
                                            Rng& rng) {
  const int n = static_cast<int>(classes.size());
  long sizes[3] = {0, 0, 0};
  for (int c : classes) ++sizes[c];

  std::vector<int> deg(n, 0);
  std::vector<std::vector<bool>> linked(n);  // adjacency matrix rows
  for (int v = 0; v < n; ++v) linked[v].assign(n, false);
  // avail[v] = cross-class partners not yet joined to v
  std::vector<long> avail(n);
  for (int v = 0; v < n; ++v) avail[v] = static_cast<long>(n) - sizes[classes[v]];

  std::vector<std::pair<int, int>> edges;
  edges.reserve(target);
  std::vector<int> pick_a, pick_b;
  while (static_cast<long>(edges.size()) < target) {
    int dmin = -1;
    for (int v = 0; v < n; ++v)
      if (avail[v] > 0 && (dmin < 0 || deg[v] < dmin)) dmin = deg[v];
    if (dmin < 0) throw std::runtime_error("flat generation: target exceeds cross-class pairs");
    pick_a.clear();
    for (int v = 0; v < n; ++v)
      if (avail[v] > 0 && deg[v] == dmin) pick_a.push_back(v);
    const int u = pick_a[rng.next_below(pick_a.size())];

    int dmin2 = -1;
    for (int w = 0; w < n; ++w)
      if (classes[w] != classes[u] && !linked[u][w] && (dmin2 < 0 || deg[w] < dmin2))
        dmin2 = deg[w];
    pick_b.clear();
    for (int w = 0; w < n; ++w)
      if (classes[w] != classes[u] && !linked[u][w] && deg[w] == dmin2) pick_b.push_back(w);
    const int v = pick_b[rng.next_below(pick_b.size())];

    linked[u][v] = linked[v][u] = true;
    ++deg[u];
    ++deg[v];
    --avail[u];
    --avail[v];
    edges.emplace_back(u, v);
  }
  return edges;
}

}  // namespace

std::vector<int> assign_classes(const GenSpec& spec, Rng& rng) {
  spec.validate();
  switch (spec.type) {
    case GraphType::Uni: {
      std::vector<int> classes(spec.n);
      if (spec.delta == 0) {
        for (auto& c : classes) c = static_cast<int>(rng.next_below(3));
      } else {
        for (auto& c : classes) {
          const int r = rng.next_int(0, spec.delta);
          c = rng.next_int(r, 2);
        }
      }
      return classes;
    }
    case GraphType::Eq:
    case GraphType::Flat:
      return balanced_classes(spec.n, rng);
  }
  throw std::logic_error("unreachable");
}

Graph generate(const GenSpec& spec) {
  spec.validate();
  Rng class_rng = Rng::substream(spec.seed, kClassStream);
  Rng edge_rng = Rng::substream(spec.seed, kEdgeStream);

  std::vector<int> classes = assign_classes(spec, class_rng);
  const double p = spec.p();

  std::vector<std::pair<int, int>> edges;
  if (spec.type == GraphType::Flat) {
    const long cross = count_cross_pairs(classes);
    const long target = std::lround(p * static_cast<double>(cross));
    if (target > cross) throw std::runtime_error("flat generation: target exceeds cross-class pairs");
    edges = flat_edges(classes, target, edge_rng);
  } else {
    for (int i = 0; i < spec.n; ++i)
      for (int j = i + 1; j < spec.n; ++j)
        if (classes[i] != classes[j] && edge_rng.next_double() < p) edges.emplace_back(i, j);
  }

  GraphMeta meta{to_string(spec.type), spec.p_label, spec.delta, spec.seed};
  return Graph(spec.n, std::move(edges), std::move(classes), std::move(meta));
}

std::vector<std::string> decimal_grid(const std::string& p_min, const std::string& p_max,
                                      const std::string& p_step) {
  Decimal lo = Decimal::parse(p_min);
  Decimal hi = Decimal::parse(p_max);
  Decimal step = Decimal::parse(p_step);
  const int scale = std::max({lo.scale, hi.scale, step.scale});
  lo = lo.rescaled(scale);
  hi = hi.rescaled(scale);
  step = step.rescaled(scale);
  if (step.mantissa <= 0) throw std::invalid_argument("p_step must be positive");
  if (lo.mantissa > hi.mantissa) throw std::invalid_argument("p_min exceeds p_max");

  std::vector<std::string> labels;
  const long long count = (hi.mantissa - lo.mantissa) / step.mantissa + 1;
  labels.reserve(count);
  for (long long i = 0; i < count; ++i)
    labels.push_back(Decimal{lo.mantissa + i * step.mantissa, scale}.label());
  return labels;
}

std::vector<GenSpec> sweep_specs(GraphType type, int n, const std::string& p_min,
                                 const std::string& p_max, const std::string& p_step,
                                 const std::vector<uint64_t>& seeds, int delta) {
  if (seeds.empty()) throw std::invalid_argument("seed list is empty");
  std::vector<GenSpec> specs;
  for (const std::string& label : decimal_grid(p_min, p_max, p_step)) {
    for (uint64_t s : seeds) {
      GenSpec spec;
      spec.type = type;
      spec.n = n;
      spec.p_label = label;
      spec.delta = delta;
      spec.seed = s;
      spec.validate();
      specs.push_back(std::move(spec));
    }
  }
  return specs;
}

}  // namespace tricolor
