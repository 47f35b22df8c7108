#include "tricolor/dsatur.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tricolor {

std::vector<int> weights_to_permutation(std::span<const double> weights) {
  std::vector<int> perm(weights.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](int a, int b) { return weights[a] > weights[b]; });
  return perm;
}

std::vector<double> dsatur_init_weights(const Graph& g) {
  std::vector<double> w(g.order(), 1.0);
  const int dmax = g.max_degree();
  if (dmax == 0) return w;
  for (int v = 0; v < g.order(); ++v)
    w[v] = static_cast<double>(g.degree(v)) / static_cast<double>(dmax);
  return w;
}

void DecodeScratch::reset(int n) {
  satmask_.assign(n, 0);
  state_.assign(n, 0);
  for (auto& b : bucket_) b.clear();
  ties_.clear();
}

namespace {
constexpr uint8_t kPending = 0;
constexpr uint8_t kColored = 1;
constexpr uint8_t kDead = 2;
}  // namespace

struct DecodeEngine {
  const Graph& g;
  std::span<const double> score;
  Rng& rng;
  DecodeScratch& s;
  DecodeResult& out;
  int pending;

  using Entry = DecodeScratch::Entry;
  // Max-heap on key; equal keys pop in ascending vertex order.
  static bool heap_less(const Entry& a, const Entry& b) {
    return a.key < b.key || (a.key == b.key && a.v > b.v);
  }

  DecodeEngine(const Graph& graph, std::span<const double> tie_score, Rng& r,
               DecodeScratch& scratch, DecodeResult& result)
      : g(graph), score(tie_score), rng(r), s(scratch), out(result), pending(graph.order()) {
    const int n = g.order();
    out.coloring.assign(n, kUncolored);
    out.order_colored.clear();
    out.uncolored.clear();
    s.reset(n);
    auto& base = s.bucket_[0];
    base.resize(n);
    for (int v = 0; v < n; ++v) base[v] = {score[v], v};
    std::make_heap(base.begin(), base.end(), heap_less);
  }

  int saturation(int v) const { return std::popcount(s.satmask_[v]); }

  void color_vertex(int v) {
    const uint8_t mask = s.satmask_[v];
    Color c = 1;
    while (mask & (1u << (c - 1))) ++c;
    out.coloring[v] = c;
    s.state_[v] = kColored;
    out.order_colored.push_back(v);
    --pending;
    const uint8_t bit = static_cast<uint8_t>(1u << (c - 1));
    for (int u : g.neighbors(v)) {
      if (s.satmask_[u] & bit) continue;
      s.satmask_[u] |= bit;
      if (s.state_[u] != kPending) continue;
      const int sd = saturation(u);
      if (sd == kNumColors) {
        s.state_[u] = kDead;
        out.uncolored.push_back(u);
        --pending;
      } else {
        auto& b = s.bucket_[sd];
        b.push_back({score[u], u});
        std::push_heap(b.begin(), b.end(), heap_less);
      }
    }
  }

  bool entry_valid(const Entry& e, int level) const {
    return s.state_[e.v] == kPending && saturation(e.v) == level;
  }

  // Highest-saturation pending vertex; weight ties resolved uniformly.
  int select() {
    for (int level = kNumColors - 1; level >= 0; --level) {
      auto& b = s.bucket_[level];
      while (!b.empty()) {
        if (!entry_valid(b.front(), level)) {
          std::pop_heap(b.begin(), b.end(), heap_less);
          b.pop_back();
          continue;
        }
        Entry top = b.front();
        std::pop_heap(b.begin(), b.end(), heap_less);
        b.pop_back();
        // Gather the valid entries tied on key (ascending vertex order).
        s.ties_.clear();
        while (!b.empty() && b.front().key == top.key) {
          Entry e = b.front();
          std::pop_heap(b.begin(), b.end(), heap_less);
          b.pop_back();
          if (entry_valid(e, level)) s.ties_.push_back(e);
        }
        int chosen = top.v;
        if (!s.ties_.empty()) {
          const auto pick = rng.next_below(s.ties_.size() + 1);
          if (pick > 0) {
            chosen = s.ties_[pick - 1].v;
            s.ties_[pick - 1] = top;
          }
          for (const Entry& e : s.ties_) {
            b.push_back(e);
            std::push_heap(b.begin(), b.end(), heap_less);
          }
        }
        return chosen;
      }
    }
    throw std::logic_error("decode: pending vertex without a live candidate entry");
  }

  void run(int forced_first) {
    if (forced_first >= 0) color_vertex(forced_first);
    while (pending > 0) color_vertex(select());
    const int n = g.order();
    out.saturation.resize(n);
    for (int v = 0; v < n; ++v) out.saturation[v] = saturation(v);
  }
};

namespace {

void check_weights(const Graph& g, std::span<const double> weights) {
  if (static_cast<int>(weights.size()) != g.order())
    throw std::invalid_argument("weight vector length does not match vertex count");
  for (double w : weights)
    if (!std::isfinite(w)) throw std::invalid_argument("weight is not finite");
}

void degree_scores(const Graph& g, std::vector<double>& buf) {
  buf.resize(g.order());
  for (int v = 0; v < g.order(); ++v) buf[v] = static_cast<double>(g.degree(v));
}

}  // namespace

void decode_into(const Graph& g, std::span<const double> weights, Rng& rng,
                 DecodeScratch& scratch, DecodeResult& out) {
  check_weights(g, weights);
  DecodeEngine(g, weights, rng, scratch, out).run(-1);
}

DecodeResult decode(const Graph& g, std::span<const double> weights, Rng& rng) {
  DecodeScratch scratch;
  DecodeResult out;
  decode_into(g, weights, rng, scratch, out);
  return out;
}

void classic_dsatur_into(const Graph& g, Rng& rng, DecodeScratch& scratch, DecodeResult& out) {
  degree_scores(g, scratch.degree_score_);
  DecodeEngine(g, scratch.degree_score_, rng, scratch, out).run(-1);
}

DecodeResult classic_dsatur(const Graph& g, Rng& rng) {
  DecodeScratch scratch;
  DecodeResult out;
  classic_dsatur_into(g, rng, scratch, out);
  return out;
}

ModDsatResult mod_dsat(const Graph& g, Rng& rng) {
  ModDsatResult result;
  result.runs = g.order();
  DecodeScratch scratch;
  DecodeResult pass;
  int best_penalty = g.order() + 1;
  for (int first = 0; first < g.order(); ++first) {
    degree_scores(g, scratch.degree_score_);
    DecodeEngine(g, scratch.degree_score_, rng, scratch, pass).run(first);
    const int pen = pass.penalty();
    if (pen == 0 && !result.success) {
      result.success = true;
      result.evals_to_first_success = first + 1;
    }
    if (pen == 0) ++result.successes;
    if (pen < best_penalty) {
      best_penalty = pen;
      result.best = pass.coloring;
    }
  }
  return result;
}

BkDsatResult bk_dsat(const Graph& g, long max_backtracks, Rng& rng) {
  if (max_backtracks <= 0) throw std::invalid_argument("max_backtracks must be positive");
  const int n = g.order();
  BkDsatResult result;
  result.coloring.assign(n, kUncolored);

  std::vector<std::array<int, 4>> block(n, {0, 0, 0, 0});
  std::vector<int> blocked_colors(n, 0);
  auto& color = result.coloring;

  auto apply = [&](int v, Color c) {
    color[v] = c;
    ++result.assignments;
    for (int u : g.neighbors(v))
      if (color[u] == kUncolored && block[u][c]++ == 0) ++blocked_colors[u];
  };
  auto undo = [&](int v) {
    const Color c = color[v];
    color[v] = kUncolored;
    for (int u : g.neighbors(v))
      if (color[u] == kUncolored && --block[u][c] == 0) --blocked_colors[u];
  };

  // DSatur selection: max saturation, then max degree, then uniform random.
  std::vector<int> ties;
  auto select = [&]() {
    int best_sat = -1, best_deg = -1;
    for (int v = 0; v < n; ++v) {
      if (color[v] != kUncolored) continue;
      const int sat = blocked_colors[v];
      const int deg = g.degree(v);
      if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
        best_sat = sat;
        best_deg = deg;
        ties.clear();
        ties.push_back(v);
      } else if (sat == best_sat && deg == best_deg) {
        ties.push_back(v);
      }
    }
    return ties[rng.next_below(ties.size())];
  };

  struct Frame {
    int v;
    uint8_t tried;
  };
  std::vector<Frame> trail;
  trail.reserve(n);

  int colored = 0;
  while (colored < n) {
    const int v = select();
    bool advanced = false;
    if (blocked_colors[v] < kNumColors) {
      Color c = 1;
      while (block[v][c] > 0) ++c;
      trail.push_back({v, static_cast<uint8_t>(1u << (c - 1))});
      apply(v, c);
      ++colored;
      advanced = true;
    }
    if (advanced) continue;

    // Dead end: resume the most recent vertex with an untried feasible color.
    bool resumed = false;
    while (!trail.empty()) {
      Frame f = trail.back();
      trail.pop_back();
      undo(f.v);
      --colored;
      Color c = 0;
      for (Color cand = 1; cand <= kNumColors; ++cand) {
        if (f.tried & (1u << (cand - 1))) continue;
        if (block[f.v][cand] > 0) continue;
        c = cand;
        break;
      }
      if (c != 0) {
        if (++result.backtracks_used >= max_backtracks) {
          result.success = false;
          return result;
        }
        f.tried |= static_cast<uint8_t>(1u << (c - 1));
        trail.push_back(f);
        apply(f.v, c);
        ++colored;
        resumed = true;
        break;
      }
    }
    if (!resumed) {
      result.exhausted = true;  // no 3-coloring exists
      return result;
    }
  }
  result.success = true;
  return result;
}

}  // namespace tricolor
