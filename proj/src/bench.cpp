#include "tricolor/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "tricolor/baselines.hpp"
#include "tricolor/hsa_ea.hpp"
#include "tricolor/oracle.hpp"

namespace tricolor {

using ordered_json = nlohmann::ordered_json;

std::string InstanceId::name() const {
  return type + "_" + std::to_string(n) + "_" + p_label + "_" + std::to_string(seed);
}

InstanceId instance_of(const GenSpec& spec) {
  return {to_string(spec.type), spec.n, spec.p_label, spec.delta, spec.seed};
}

std::string record_to_json(const RunRecord& r) {
  ordered_json j;
  j["algorithm"] = r.algorithm;
  j["instance"] = {{"type", r.instance.type},
                   {"n", r.instance.n},
                   {"p", r.instance.p_label},
                   {"delta", r.instance.delta},
                   {"seed", r.instance.seed}};
  j["run_seed"] = r.run_seed;
  j["success"] = r.success;
  if (r.success) j["evals_to_solution"] = r.evals_to_solution;
  j["evals_used"] = r.evals_used;
  j["wall_ms"] = r.wall_ms;
  j["final_fitness"] = r.final_fitness;
  if (r.generations >= 0) j["generations"] = r.generations;
  return j.dump();
}

RunRecord record_from_json(const std::string& line) {
  const auto j = ordered_json::parse(line);
  RunRecord r;
  r.algorithm = j.at("algorithm").get<std::string>();
  const auto& inst = j.at("instance");
  r.instance.type = inst.at("type").get<std::string>();
  r.instance.n = inst.at("n").get<int>();
  r.instance.p_label = inst.at("p").get<std::string>();
  r.instance.delta = inst.at("delta").get<int>();
  r.instance.seed = inst.at("seed").get<uint64_t>();
  r.run_seed = j.at("run_seed").get<uint64_t>();
  r.success = j.at("success").get<bool>();
  if (r.success) r.evals_to_solution = j.at("evals_to_solution").get<long>();
  r.evals_used = j.at("evals_used").get<long>();
  r.wall_ms = j.at("wall_ms").get<double>();
  r.final_fitness = j.at("final_fitness").get<int>();
  r.generations = j.value("generations", -1);
  return r;
}

namespace {

template <class T>
T parse_number(const std::string& value, const char* what) {
  std::istringstream ss(value);
  T out;
  if (!(ss >> out) || !ss.eof()) throw std::invalid_argument(std::string("bad ") + what + ": " + value);
  return out;
}

}  // namespace

void SolverOptions::set(const std::string& key, const std::string& value) {
  if (key == "mu") mu = parse_number<int>(value, "mu");
  else if (key == "lambda") lambda = parse_number<int>(value, "lambda");
  else if (key == "tournament_k") tournament_k = parse_number<int>(value, "tournament_k");
  else if (key == "local_search_steps")
    local_search_steps = parse_number<int>(value, "local_search_steps");
  else if (key == "q_init") q_init = parse_number<double>(value, "q_init");
  else if (key == "epsilon0") epsilon0 = parse_number<double>(value, "epsilon0");
  else if (key == "tau") tau = parse_number<double>(value, "tau");
  else if (key == "tau_prime") tau_prime = parse_number<double>(value, "tau_prime");
  else if (key == "tabu_base") tabu_base = parse_number<int>(value, "tabu_base");
  else if (key == "tabu_slope") tabu_slope = parse_number<double>(value, "tabu_slope");
  else if (key == "saw_increment") saw_increment = parse_number<long>(value, "saw_increment");
  else if (key == "saw_period") saw_period = parse_number<long>(value, "saw_period");
  else if (key == "trace_path") trace_path = value;
  else throw std::invalid_argument("unknown option: " + key);
}

SolverOptions SolverOptions::from_json(const std::string& json_text) {
  SolverOptions opts;
  if (json_text.empty()) return opts;
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const ordered_json::parse_error& e) {
    throw std::invalid_argument(std::string("options are not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("options must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (value.is_string())
      opts.set(key, value.get<std::string>());
    else
      opts.set(key, value.dump());
  }
  return opts;
}

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names = {"hsaea",  "tabucol", "sawea",
                                                 "dsatur", "moddsat", "bkdsat"};
  return names;
}

bool known_algorithm(const std::string& algo) {
  const auto& names = algorithm_names();
  return std::find(names.begin(), names.end(), algo) != names.end();
}

uint64_t derive_run_seed(uint64_t instance_seed, int run_index, const std::string& algorithm) {
  const uint64_t algo_hash = fnv1a64(algorithm.data(), algorithm.size());
  const uint64_t base = Rng::derive_seed(instance_seed, algo_hash);
  return Rng::derive_seed(base, static_cast<uint64_t>(run_index));
}

namespace {

InstanceId instance_from_graph(const Graph& g) {
  InstanceId id;
  id.n = g.order();
  if (g.meta()) {
    id.type = g.meta()->type;
    id.p_label = g.meta()->p_label;
    id.delta = g.meta()->delta;
    id.seed = g.meta()->seed;
  } else {
    id.type = "file";
    id.p_label = "0";
  }
  return id;
}

EaConfig ea_config(const SolverOptions& o, long budget) {
  EaConfig cfg;
  cfg.max_evals = budget;
  if (o.mu) cfg.mu = *o.mu;
  if (o.lambda) cfg.lambda = *o.lambda;
  if (o.tournament_k) cfg.tournament_k = *o.tournament_k;
  if (o.local_search_steps) cfg.local_search_steps = *o.local_search_steps;
  if (o.q_init) cfg.q_init = *o.q_init;
  if (o.epsilon0) cfg.epsilon0 = *o.epsilon0;
  if (o.tau) cfg.tau = *o.tau;
  if (o.tau_prime) cfg.tau_prime = *o.tau_prime;
  return cfg;
}

}  // namespace

RunRecord solve_instance(const Graph& g, const std::string& algorithm, uint64_t run_seed,
                         long budget, const SolverOptions& options) {
  if (!known_algorithm(algorithm)) throw std::invalid_argument("unknown algorithm: " + algorithm);
  if (budget < 1) throw std::invalid_argument("budget must be positive");

  RunRecord rec;
  rec.algorithm = algorithm;
  rec.instance = instance_from_graph(g);
  rec.run_seed = run_seed;

  const auto start = std::chrono::steady_clock::now();
  if (algorithm == "hsaea") {
    GenerationCallback callback;
    std::ofstream trace;
    if (options.trace_path) {
      trace.open(*options.trace_path);
      if (!trace) throw std::runtime_error("cannot open trace file: " + *options.trace_path);
      trace << "generation,best_fitness,ref_fitness,mean_q\n";
      callback = [&trace](const GenerationInfo& info) {
        trace << info.generation << "," << info.best_offspring_fitness << ","
              << info.ref_fitness << "," << info.mean_q << "\n";
      };
    }
    const EaResult r = hsa_ea_run(g, ea_config(options, budget), run_seed, callback);
    rec.success = r.success;
    rec.evals_to_solution = r.evals_to_solution;
    rec.evals_used = r.evals_used;
    rec.final_fitness = r.final_best_fitness;
    rec.generations = r.generations;
  } else if (algorithm == "tabucol") {
    TabucolConfig cfg;
    if (options.tabu_base) cfg.tabu_base = *options.tabu_base;
    if (options.tabu_slope) cfg.tabu_slope = *options.tabu_slope;
    const TabucolResult r = tabucol_run(g, cfg, budget, run_seed);
    rec.success = r.success;
    rec.evals_to_solution = r.success ? r.evals : 0;
    rec.evals_used = r.evals;
    rec.final_fitness = r.final_conflicts;
  } else if (algorithm == "sawea") {
    SawConfig cfg;
    if (options.saw_increment) cfg.weight_increment = *options.saw_increment;
    if (options.saw_period) cfg.adaptation_period = *options.saw_period;
    const SawResult r = saw_ea_run(g, cfg, budget, run_seed);
    rec.success = r.success;
    rec.evals_to_solution = r.evals_to_solution;
    rec.evals_used = r.evals;
    rec.final_fitness = r.final_uncolored;
  } else if (algorithm == "dsatur") {
    Rng rng(run_seed);
    const DecodeResult r = classic_dsatur(g, rng);
    rec.success = r.penalty() == 0;
    rec.evals_to_solution = rec.success ? 1 : 0;
    rec.evals_used = 1;
    rec.final_fitness = r.penalty();
  } else if (algorithm == "moddsat") {
    Rng rng(run_seed);
    const ModDsatResult r = mod_dsat(g, rng);
    rec.success = r.success;
    rec.evals_to_solution = r.evals_to_first_success;
    rec.evals_used = r.runs;
    rec.final_fitness = r.success ? 0 : penalty(g, r.best);
  } else if (algorithm == "bkdsat") {
    Rng rng(run_seed);
    const BkDsatResult r = bk_dsat(g, budget, rng);
    rec.success = r.success;
    // Color assignments stand in for evaluations; SR is the primary measure.
    rec.evals_to_solution = r.success ? r.assignments : 0;
    rec.evals_used = r.assignments;
    rec.final_fitness = r.success ? 0 : penalty(g, r.coloring);
  }
  const auto end = std::chrono::steady_clock::now();
  rec.wall_ms = std::chrono::duration<double, std::milli>(end - start).count();
  return rec;
}

namespace {

std::vector<uint64_t> parse_seed_list(const std::string& text) {
  std::vector<uint64_t> seeds;
  std::istringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto dash = part.find('-');
    if (dash != std::string::npos && dash > 0) {
      const uint64_t lo = parse_number<uint64_t>(part.substr(0, dash), "seed range");
      const uint64_t hi = parse_number<uint64_t>(part.substr(dash + 1), "seed range");
      if (hi < lo) throw std::invalid_argument("descending seed range: " + part);
      for (uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    } else {
      seeds.push_back(parse_number<uint64_t>(part, "seed"));
    }
  }
  if (seeds.empty()) throw std::invalid_argument("empty seed list");
  return seeds;
}

}  // namespace

std::vector<PlanEntry> parse_plan(std::istream& in) {
  std::vector<PlanEntry> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string token;
    PlanEntry entry;
    bool has_algo = false, has_type = false, has_n = false;
    std::string p, p_min, p_max, p_step;
    try {
      while (ls >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos)
          throw std::invalid_argument("expected key=value, got: " + token);
        const std::string key = token.substr(0, eq);
        const std::string value = token.substr(eq + 1);
        if (key == "algo") {
          if (!known_algorithm(value)) throw std::invalid_argument("unknown algorithm: " + value);
          entry.algorithm = value;
          has_algo = true;
        } else if (key == "type") {
          entry.type = graph_type_from_string(value);
          has_type = true;
        } else if (key == "n") {
          entry.n = parse_number<int>(value, "n");
          has_n = true;
        } else if (key == "p") p = value;
        else if (key == "p_min") p_min = value;
        else if (key == "p_max") p_max = value;
        else if (key == "p_step") p_step = value;
        else if (key == "delta") entry.delta = parse_number<int>(value, "delta");
        else if (key == "seeds") entry.seeds = parse_seed_list(value);
        else if (key == "runs") entry.runs = parse_number<int>(value, "runs");
        else if (key == "budget") entry.budget = parse_number<long>(value, "budget");
        else entry.options.set(key, value);
      }
      if (!has_algo && !has_type && !has_n && p.empty() && p_min.empty()) continue;  // blank
      if (!has_algo) throw std::invalid_argument("missing algo=");
      if (!has_type) throw std::invalid_argument("missing type=");
      if (!has_n) throw std::invalid_argument("missing n=");
      if (entry.seeds.empty()) throw std::invalid_argument("missing seeds=");
      if (entry.runs < 1) throw std::invalid_argument("runs must be >= 1");
      if (entry.budget < 1) throw std::invalid_argument("budget must be >= 1");
      if (!p.empty()) {
        entry.p_labels = {Decimal::parse(p).label()};
      } else if (!p_min.empty() && !p_max.empty() && !p_step.empty()) {
        entry.p_labels = decimal_grid(p_min, p_max, p_step);
      } else {
        throw std::invalid_argument("need either p= or p_min=/p_max=/p_step=");
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("plan line " + std::to_string(lineno) + ": " + e.what());
    }
    entries.push_back(std::move(entry));
  }
  if (entries.empty()) throw std::invalid_argument("plan contains no entries");
  return entries;
}

std::vector<PlanEntry> parse_plan_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open plan: " + path);
  return parse_plan(in);
}

uint64_t plan_hash(const std::string& plan_text) {
  return fnv1a64(plan_text.data(), plan_text.size());
}

void run_experiment(const std::vector<PlanEntry>& plan, int jobs,
                    const std::function<void(const RunRecord&)>& sink,
                    const std::function<void(const SweepProgress&)>& progress) {
  if (plan.empty()) throw std::invalid_argument("empty plan");

  struct InstanceJob {
    GenSpec spec;
    std::string algorithm;
    int runs;
    long budget;
    const SolverOptions* options;
  };
  std::vector<InstanceJob> tasks;
  size_t total_runs = 0;
  for (const auto& entry : plan) {
    for (const auto& p : entry.p_labels) {
      for (uint64_t seed : entry.seeds) {
        GenSpec spec;
        spec.type = entry.type;
        spec.n = entry.n;
        spec.p_label = p;
        spec.delta = entry.delta;
        spec.seed = seed;
        spec.validate();
        tasks.push_back({spec, entry.algorithm, entry.runs, entry.budget, &entry.options});
        total_runs += entry.runs;
      }
    }
  }

  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;
  jobs = std::min<int>(jobs, static_cast<int>(tasks.size()));

  std::atomic<size_t> next{0};
  std::atomic<size_t> done_runs{0};
  std::mutex sink_mutex;
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    try {
      while (true) {
        const size_t i = next.fetch_add(1);
        if (i >= tasks.size()) return;
        const InstanceJob& task = tasks[i];
        const Graph g = generate(task.spec);
        for (int run = 0; run < task.runs; ++run) {
          const uint64_t run_seed = derive_run_seed(task.spec.seed, run, task.algorithm);
          RunRecord rec = solve_instance(g, task.algorithm, run_seed, task.budget, *task.options);
          const size_t done = done_runs.fetch_add(1) + 1;
          std::lock_guard lock(sink_mutex);
          sink(rec);
          if (progress) progress({done, total_runs});
        }
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(jobs);
    for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

void run_sweep_to_file(const std::string& plan_path, const std::string& out_dir, int jobs) {
  std::ifstream plan_in(plan_path);
  if (!plan_in) throw std::runtime_error("cannot open plan: " + plan_path);
  std::stringstream buffer;
  buffer << plan_in.rdbuf();
  const std::string plan_text = buffer.str();
  std::istringstream parse_in(plan_text);
  const auto plan = parse_plan(parse_in);

  std::filesystem::create_directories(out_dir);
  const auto out_path = std::filesystem::path(out_dir) / "records.jsonl";
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open for writing: " + out_path.string());

  char hash_hex[17];
  std::snprintf(hash_hex, sizeof hash_hex, "%016llx",
                static_cast<unsigned long long>(plan_hash(plan_text)));
  ordered_json header;
  header["plan_hash"] = hash_hex;
  header["plan_path"] = plan_path;
  out << header.dump() << "\n";

  run_experiment(plan, jobs, [&](const RunRecord& rec) { out << record_to_json(rec) << "\n"; });
  if (!out) throw std::runtime_error("write failed: " + out_path.string());
}

std::vector<RunRecord> read_records_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::vector<RunRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.find("\"plan_hash\"") != std::string::npos) continue;  // header
    records.push_back(record_from_json(line));
  }
  return records;
}

std::vector<RunRecord> read_records_dir(const std::string& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw std::runtime_error("no .jsonl record files in " + dir);
  std::vector<RunRecord> records;
  for (const auto& f : files) {
    auto part = read_records_file(f.string());
    records.insert(records.end(), part.begin(), part.end());
  }
  return records;
}

std::vector<SweepResult> aggregate(const std::vector<RunRecord>& records, const GroupBy& by,
                                   bool aes_counts_failed_runs) {
  if (records.empty()) throw std::invalid_argument("no records to aggregate");
  if (!by.any()) throw std::invalid_argument("empty group-by set");

  using GroupKey = std::tuple<std::string, std::string, int, std::string, int, uint64_t>;
  auto group_key = [&](const RunRecord& r) -> GroupKey {
    return {by.algorithm ? r.algorithm : "", by.type ? r.instance.type : "",
            by.n ? r.instance.n : 0,         by.p ? r.instance.p_label : "",
            by.delta ? r.instance.delta : 0, by.seed ? r.instance.seed : 0};
  };

  // Per-instance success rates feed the ER definition (mean over instances).
  struct InstanceStats {
    int runs = 0, successes = 0;
  };
  struct GroupStats {
    std::map<std::pair<std::string, InstanceId>, InstanceStats> instances;
    int runs = 0, successes = 0;
    long double aes_sum = 0.0;
    long aes_count = 0;
    const RunRecord* sample = nullptr;
  };
  std::map<GroupKey, GroupStats> groups;
  for (const auto& r : records) {
    GroupStats& g = groups[group_key(r)];
    if (!g.sample) g.sample = &r;
    ++g.runs;
    if (r.success) ++g.successes;
    auto& inst = g.instances[{r.algorithm, r.instance}];
    ++inst.runs;
    if (r.success) ++inst.successes;
    if (r.success) {
      g.aes_sum += static_cast<long double>(r.evals_to_solution);
      ++g.aes_count;
    } else if (aes_counts_failed_runs) {
      g.aes_sum += static_cast<long double>(r.evals_used);
      ++g.aes_count;
    }
  }

  std::vector<SweepResult> results;
  results.reserve(groups.size());
  for (const auto& [key, g] : groups) {
    SweepResult res;
    res.algorithm = by.algorithm ? g.sample->algorithm : "*";
    res.type = by.type ? g.sample->instance.type : "*";
    res.n = by.n ? g.sample->instance.n : 0;
    res.p_label = by.p ? g.sample->instance.p_label : "*";
    res.delta = by.delta ? g.sample->instance.delta : 0;
    res.seed = by.seed ? g.sample->instance.seed : 0;
    res.runs = g.runs;
    res.successes = g.successes;
    res.instances = static_cast<int>(g.instances.size());
    res.sr = static_cast<double>(g.successes) / static_cast<double>(g.runs);
    double sr_bar = 0.0;
    for (const auto& [id, inst] : g.instances)
      sr_bar += static_cast<double>(inst.successes) / static_cast<double>(inst.runs);
    sr_bar /= static_cast<double>(g.instances.size());
    res.er = 1.0 - sr_bar;
    if (g.aes_count > 0)
      res.aes = static_cast<double>(g.aes_sum / static_cast<long double>(g.aes_count));
    results.push_back(std::move(res));
  }
  return results;
}

std::vector<PhasePrediction> phase_predictions(int n) {
  const double nd = n;
  // Edge counts translate to p through m ~ p * n^2 / 3 cross-class pairs.
  return {
      {"Petford-Welsh 2pn/3=16/3", 8.0 / nd, 8.0 / nd},
      {"Cheeseman 2m/n=5.4", 8.1 / nd, 8.1 / nd},
      {"Eiben 7/n<=p<=8/n", 7.0 / nd, 8.0 / nd},
      {"Hayes m/n=2.35", 7.05 / nd, 7.05 / nd},
  };
}

PhaseReport phase_transition_report(const std::vector<SweepResult>& results) {
  if (results.empty()) throw std::invalid_argument("no results");
  PhaseReport report;
  report.n = results.front().n;
  for (const auto& r : results) {
    if (r.n != report.n)
      throw std::invalid_argument("phase report expects results for a single n");
    report.curves[r.algorithm].push_back(
        {r.p_label, Decimal::parse(r.p_label).value(), r.sr, r.aes});
  }
  for (auto& [algo, curve] : report.curves) {
    std::sort(curve.begin(), curve.end(),
              [](const PhaseCurvePoint& a, const PhaseCurvePoint& b) { return a.p < b.p; });
    const auto min_it = std::min_element(
        curve.begin(), curve.end(),
        [](const PhaseCurvePoint& a, const PhaseCurvePoint& b) { return a.sr < b.sr; });
    report.sr_minimum[algo] = min_it->p_label;
  }
  report.predictions = phase_predictions(report.n);
  return report;
}

}  // namespace tricolor
