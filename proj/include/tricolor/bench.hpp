#ifndef TRICOLOR_BENCH_HPP
#define TRICOLOR_BENCH_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "tricolor/graph_gen.hpp"

namespace tricolor {

struct InstanceId {
  std::string type;
  int n = 0;
  std::string p_label;
  int delta = 0;
  uint64_t seed = 0;

  std::string name() const;  // "{type}_{n}_{p}_{seed}"
  auto key() const { return std::tie(type, n, p_label, delta, seed); }
  bool operator==(const InstanceId& o) const { return key() == o.key(); }
  bool operator<(const InstanceId& o) const { return key() < o.key(); }
};
InstanceId instance_of(const GenSpec& spec);

/// One solver execution on one instance.
struct RunRecord {
  std::string algorithm;
  InstanceId instance;
  uint64_t run_seed = 0;
  bool success = false;
  long evals_to_solution = 0;  // meaningful iff success
  long evals_used = 0;
  double wall_ms = 0.0;
  int final_fitness = 0;
  int generations = -1;  // -1 when the algorithm has no generation loop
};

std::string record_to_json(const RunRecord& r);
RunRecord record_from_json(const std::string& line);

/// Per-run configuration overrides, parsed from plan entries or the solve
/// options blob. Unknown keys are rejected.
struct SolverOptions {
  std::optional<int> mu, lambda, tournament_k, local_search_steps, tabu_base;
  std::optional<double> q_init, epsilon0, tau, tau_prime, tabu_slope;
  std::optional<long> saw_increment, saw_period;
  std::optional<std::string> trace_path;  // hsaea per-generation CSV

  static SolverOptions from_json(const std::string& json_text);
  void set(const std::string& key, const std::string& value);
};

bool known_algorithm(const std::string& algo);
const std::vector<std::string>& algorithm_names();

/// Deterministic per-run seed: mixes the instance seed, run index and
/// algorithm name so repeated runs differ but re-running a plan does not.
uint64_t derive_run_seed(uint64_t instance_seed, int run_index, const std::string& algorithm);

/// Runs `algorithm` on `g` under `budget` evaluations. Throws
/// std::invalid_argument for unknown algorithm names.
RunRecord solve_instance(const Graph& g, const std::string& algorithm, uint64_t run_seed,
                         long budget, const SolverOptions& options = {});

struct PlanEntry {
  std::string algorithm;
  GraphType type = GraphType::Eq;
  int n = 0;
  std::vector<std::string> p_labels;
  int delta = 0;
  std::vector<uint64_t> seeds;
  int runs = 25;
  long budget = 300'000;
  SolverOptions options;
};

/// Plan text: one experiment entry per line of whitespace-separated key=value
/// pairs; `#` starts a comment. Either p=<label> or p_min/p_max/p_step.
std::vector<PlanEntry> parse_plan(std::istream& in);
std::vector<PlanEntry> parse_plan_file(const std::string& path);
uint64_t plan_hash(const std::string& plan_text);

struct SweepProgress {
  size_t done = 0;
  size_t total = 0;
};

/// Executes every (entry, p, seed, run) combination, `jobs` runs in flight.
/// Records are handed to `sink` in completion order; record contents are
/// reproducible because every run seed derives from the plan alone.
void run_experiment(const std::vector<PlanEntry>& plan, int jobs,
                    const std::function<void(const RunRecord&)>& sink,
                    const std::function<void(const SweepProgress&)>& progress = {});

/// Convenience wrapper: runs the plan and writes a JSONL record store whose
/// header line binds the records to the plan text hash.
void run_sweep_to_file(const std::string& plan_path, const std::string& out_dir, int jobs);
std::vector<RunRecord> read_records_file(const std::string& path);
std::vector<RunRecord> read_records_dir(const std::string& dir);

/// Aggregation key choice; at least one field must stay on.
struct GroupBy {
  bool algorithm = true;
  bool type = true;
  bool n = true;
  bool p = true;
  bool delta = true;
  bool seed = false;  // per-instance granularity

  bool any() const { return algorithm || type || n || p || delta || seed; }
};

struct SweepResult {
  std::string algorithm, type, p_label;
  int n = 0, delta = 0;
  uint64_t seed = 0;  // meaningful only when grouped by seed
  int runs = 0, successes = 0;
  int instances = 0;
  double sr = 0.0;                // successes / runs
  double er = 0.0;                // 1 - mean per-instance SR
  std::optional<double> aes;      // mean evals over successful runs
};

/// SR/AES/ER per group. AES may include failed runs' evaluation counts when
/// `aes_counts_failed_runs` is set (off by default).
std::vector<SweepResult> aggregate(const std::vector<RunRecord>& records, const GroupBy& by,
                                   bool aes_counts_failed_runs = false);

struct PhasePrediction {
  std::string source;
  double p_low = 0.0, p_high = 0.0;  // point predictions have p_low == p_high
};
/// Critical edge densities reported in the literature, translated to p via
/// m ~ p n^2 / 3 cross-class pairs.
std::vector<PhasePrediction> phase_predictions(int n);

struct PhaseCurvePoint {
  std::string p_label;
  double p = 0.0;
  double sr = 0.0;
  std::optional<double> aes;
};
struct PhaseReport {
  int n = 0;
  std::map<std::string, std::vector<PhaseCurvePoint>> curves;  // per algorithm, p ascending
  std::map<std::string, std::string> sr_minimum;               // algorithm -> p label
  std::vector<PhasePrediction> predictions;
};
/// Expects results grouped at (algorithm, p) granularity for a single n.
PhaseReport phase_transition_report(const std::vector<SweepResult>& results);

}  // namespace tricolor

#endif  // TRICOLOR_BENCH_HPP
