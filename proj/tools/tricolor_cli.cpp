// Command-line front end for the tricolor shared library. All functionality
// is reached through the C API in tricolor.h; this file only parses flags,
// assembles option blobs and reports errors.
//
// Exit codes: 0 success, 2 usage error, 3 data/solver error.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tricolor.h"

namespace {

constexpr int kExitData = 3;

int data_error(tri_status status) {
  std::cerr << "error (" << tri_status_name(status) << "): " << tri_last_error() << "\n";
  return kExitData;
}

struct GraphHandle {
  tri_graph* g = nullptr;
  ~GraphHandle() { tri_graph_free(g); }
};

struct StringHandle {
  char* s = nullptr;
  ~StringHandle() { tri_string_free(s); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tricolor: planted 3-colorable graph generation, coloring solvers and "
               "benchmark harness"};
  app.require_subcommand(1);

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "generate a planted 3-colorable graph as DIMACS .col");
  std::string gen_type = "eq", gen_p = "0.014", gen_out = ".";
  int gen_n = 500, gen_delta = 0;
  uint64_t gen_seed = 1;
  gen->add_option("--type", gen_type, "graph type: uni, eq or flat")->capture_default_str();
  gen->add_option("--n", gen_n, "vertex count")->capture_default_str();
  gen->add_option("--p", gen_p, "edge probability (decimal text)")->capture_default_str();
  gen->add_option("--delta", gen_delta, "class size variability, uni only")
      ->capture_default_str();
  gen->add_option("--seed", gen_seed, "generator seed")->capture_default_str();
  gen->add_option("--out", gen_out, "output directory")->capture_default_str();

  // ---- solve ----
  auto* solve = app.add_subcommand("solve", "run one solver on one graph; prints a JSON record");
  std::string solve_algo, solve_graph, solve_trace;
  uint64_t solve_seed = 1;
  long solve_budget = 300000;
  int opt_mu = 0, opt_lambda = 0, opt_k = 0, opt_ls = 0, opt_tabu_base = 0;
  double opt_qinit = 0, opt_eps0 = 0, opt_tau = 0, opt_tau_prime = 0, opt_tabu_slope = 0;
  long opt_saw_inc = 0, opt_saw_period = 0;
  solve->add_option("--algo", solve_algo,
                    "hsaea | tabucol | sawea | dsatur | moddsat | bkdsat")
      ->required();
  solve->add_option("--graph", solve_graph, "DIMACS .col file")->required();
  solve->add_option("--seed", solve_seed, "run seed")->capture_default_str();
  solve->add_option("--budget", solve_budget,
                    "evaluations (hsaea/sawea), iterations (tabucol) or backtracks (bkdsat)")
      ->capture_default_str();
  auto* f_mu = solve->add_option("--mu", opt_mu, "hsaea: parent count");
  auto* f_lambda = solve->add_option("--lambda", opt_lambda, "hsaea: offspring count");
  auto* f_k = solve->add_option("--tournament-k", opt_k, "hsaea: tournament size");
  auto* f_qinit = solve->add_option("--q-init", opt_qinit, "hsaea: initial mutation strength");
  auto* f_eps0 = solve->add_option("--epsilon0", opt_eps0, "hsaea: mutation strength floor");
  auto* f_tau = solve->add_option("--tau", opt_tau, "hsaea: per-coordinate learning rate");
  auto* f_tau_prime = solve->add_option("--tau-prime", opt_tau_prime,
                                        "hsaea: shared learning rate");
  auto* f_ls = solve->add_option("--local-search-steps", opt_ls,
                                 "hsaea: swap applications per offspring");
  auto* f_trace = solve->add_option("--trace", solve_trace, "hsaea: per-generation CSV trace");
  auto* f_tbase = solve->add_option("--tabu-base", opt_tabu_base, "tabucol: base tenure");
  auto* f_tslope = solve->add_option("--tabu-slope", opt_tabu_slope,
                                     "tabucol: conflict-proportional tenure");
  auto* f_sinc = solve->add_option("--saw-increment", opt_saw_inc, "sawea: weight increment");
  auto* f_speriod = solve->add_option("--saw-period", opt_saw_period,
                                      "sawea: evaluations between weight updates");

  // ---- sweep ----
  auto* sweep = app.add_subcommand("sweep", "run an experiment plan into a record store");
  std::string sweep_plan, sweep_out = "results";
  int sweep_jobs = 0;
  sweep->add_option("--plan", sweep_plan, "plan file (key=value entries, one per line)")
      ->required();
  sweep->add_option("--out", sweep_out, "output directory")->capture_default_str();
  sweep->add_option("--jobs", sweep_jobs, "parallel runs (0 = hardware threads)")
      ->capture_default_str();

  // ---- report ----
  auto* report = app.add_subcommand("report", "aggregate records into CSV tables and SVG charts");
  std::string report_in, report_out;
  report->add_option("--in", report_in, "directory of .jsonl record files")->required();
  report->add_option("--out", report_out, "output directory (default: --in)");

  // ---- stats ----
  auto* stats = app.add_subcommand("stats", "Friedman ranks and Bonferroni-Dunn diagrams");
  std::string stats_in, stats_out;
  double stats_alpha = 0.05;
  stats->add_option("--in", stats_in, "instances.csv produced by report")->required();
  stats->add_option("--out", stats_out, "output directory")->required();
  stats->add_option("--alpha", stats_alpha, "significance level: 0.05 or 0.10")
      ->capture_default_str();

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "exact 3-colorability decision (small graphs)");
  std::string verify_graph;
  long verify_budget = 0;
  verify->add_option("--graph", verify_graph, "DIMACS .col file")->required();
  verify->add_option("--budget", verify_budget, "search node budget (0 = default)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 2;
  }

  if (gen->parsed()) {
    GraphHandle h;
    tri_status st =
        tri_graph_generate(gen_type.c_str(), gen_n, gen_p.c_str(), gen_delta, gen_seed, &h.g);
    if (st != TRI_OK) return data_error(st);
    StringHandle name;
    if ((st = tri_graph_name(h.g, &name.s)) != TRI_OK) return data_error(st);
    const std::string path = gen_out + "/" + name.s + ".col";
    if ((st = tri_graph_write(h.g, path.c_str())) != TRI_OK) return data_error(st);
    std::cout << path << "\n";
    return 0;
  }

  if (solve->parsed()) {
    GraphHandle h;
    tri_status st = tri_graph_read(solve_graph.c_str(), &h.g);
    if (st != TRI_OK) return data_error(st);

    nlohmann::json options = nlohmann::json::object();
    if (f_mu->count()) options["mu"] = opt_mu;
    if (f_lambda->count()) options["lambda"] = opt_lambda;
    if (f_k->count()) options["tournament_k"] = opt_k;
    if (f_qinit->count()) options["q_init"] = opt_qinit;
    if (f_eps0->count()) options["epsilon0"] = opt_eps0;
    if (f_tau->count()) options["tau"] = opt_tau;
    if (f_tau_prime->count()) options["tau_prime"] = opt_tau_prime;
    if (f_ls->count()) options["local_search_steps"] = opt_ls;
    if (f_trace->count()) options["trace_path"] = solve_trace;
    if (f_tbase->count()) options["tabu_base"] = opt_tabu_base;
    if (f_tslope->count()) options["tabu_slope"] = opt_tabu_slope;
    if (f_sinc->count()) options["saw_increment"] = opt_saw_inc;
    if (f_speriod->count()) options["saw_period"] = opt_saw_period;
    const std::string options_text = options.dump();

    StringHandle record;
    st = tri_solve(h.g, solve_algo.c_str(), solve_seed, solve_budget,
                   options.empty() ? nullptr : options_text.c_str(), &record.s);
    if (st != TRI_OK) return data_error(st);
    std::cout << record.s << "\n";
    return 0;
  }

  if (sweep->parsed()) {
    if (const char* env = std::getenv("TRICOLOR_JOBS")) sweep_jobs = std::atoi(env);
    const tri_status st = tri_sweep(sweep_plan.c_str(), sweep_out.c_str(), sweep_jobs);
    if (st != TRI_OK) return data_error(st);
    std::cout << sweep_out << "/records.jsonl\n";
    return 0;
  }

  if (report->parsed()) {
    if (report_out.empty()) report_out = report_in;
    const tri_status st = tri_report(report_in.c_str(), report_out.c_str());
    if (st != TRI_OK) return data_error(st);
    std::cout << report_out << "/aggregate.csv\n";
    return 0;
  }

  if (stats->parsed()) {
    const tri_status st = tri_stats(stats_in.c_str(), stats_out.c_str(), stats_alpha);
    if (st != TRI_OK) return data_error(st);
    std::cout << stats_out << "/ranks.csv\n";
    return 0;
  }

  if (verify->parsed()) {
    GraphHandle h;
    tri_status st = tri_graph_read(verify_graph.c_str(), &h.g);
    if (st != TRI_OK) return data_error(st);
    tri_verdict verdict;
    if ((st = tri_verify(h.g, verify_budget, &verdict)) != TRI_OK) return data_error(st);
    switch (verdict) {
      case TRI_COLORABLE: std::cout << "colorable\n"; break;
      case TRI_NOT_COLORABLE: std::cout << "not-colorable\n"; break;
      case TRI_BUDGET_EXCEEDED: std::cout << "budget-exceeded\n"; break;
    }
    return 0;
  }

  return 2;
}
