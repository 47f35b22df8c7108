#include "tricolor.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "tricolor/bench.hpp"
#include "tricolor/graph.hpp"
#include "tricolor/graph_gen.hpp"
#include "tricolor/oracle.hpp"
#include "tricolor/report.hpp"

using namespace tricolor;

struct tri_graph {
  Graph graph;
};

namespace {

thread_local std::string t_last_error;

tri_status fail(tri_status code, const std::string& message) {
  t_last_error = message;
  return code;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

/* Exceptions from the C++ core map onto status codes at this boundary. */
template <class Fn>
tri_status guarded(Fn&& fn) {
  try {
    t_last_error.clear();
    return fn();
  } catch (const ParseError& e) {
    return fail(TRI_ERR_PARSE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(TRI_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(TRI_ERR_INTERNAL, "out of memory");
  } catch (const std::runtime_error& e) {
    const std::string what = e.what();
    if (what.find("cannot open") != std::string::npos ||
        what.find("write failed") != std::string::npos ||
        what.find("cannot write") != std::string::npos ||
        what.find("no .jsonl") != std::string::npos)
      return fail(TRI_ERR_IO, what);
    if (what.find("generation") != std::string::npos) return fail(TRI_ERR_GENERATION, what);
    return fail(TRI_ERR_INTERNAL, what);
  } catch (const std::exception& e) {
    return fail(TRI_ERR_INTERNAL, e.what());
  }
}

}  // namespace

extern "C" {

const char* tri_status_name(tri_status status) {
  switch (status) {
    case TRI_OK: return "ok";
    case TRI_ERR_INVALID_ARGUMENT: return "invalid argument";
    case TRI_ERR_PARSE: return "parse error";
    case TRI_ERR_IO: return "io error";
    case TRI_ERR_UNKNOWN_ALGORITHM: return "unknown algorithm";
    case TRI_ERR_GENERATION: return "generation error";
    case TRI_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* tri_last_error(void) { return t_last_error.c_str(); }

tri_status tri_graph_generate(const char* type, int n, const char* p, int delta, uint64_t seed,
                              tri_graph** out) {
  if (!type || !p || !out) return fail(TRI_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    GenSpec spec;
    spec.type = graph_type_from_string(type);
    spec.n = n;
    spec.p_label = Decimal::parse(p).label();
    spec.delta = delta;
    spec.seed = seed;
    spec.validate();
    *out = new tri_graph{generate(spec)};
    return TRI_OK;
  });
}

tri_status tri_graph_read(const char* path, tri_graph** out) {
  if (!path || !out) return fail(TRI_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new tri_graph{read_dimacs_file(path)};
    return TRI_OK;
  });
}

tri_status tri_graph_write(const tri_graph* g, const char* path) {
  if (!g || !path) return fail(TRI_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    write_dimacs_file(g->graph, path);
    return TRI_OK;
  });
}

void tri_graph_free(tri_graph* g) { delete g; }

int tri_graph_order(const tri_graph* g) { return g ? g->graph.order() : 0; }

long tri_graph_size(const tri_graph* g) { return g ? g->graph.size() : 0; }

int tri_graph_has_planted(const tri_graph* g) {
  return g && g->graph.planted_partition() ? 1 : 0;
}

tri_status tri_graph_name(const tri_graph* g, char** out) {
  if (!g || !out) return fail(TRI_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = dup_string(g->graph.instance_name());
    return TRI_OK;
  });
}

void tri_string_free(char* s) { delete[] s; }

tri_status tri_solve(const tri_graph* g, const char* algorithm, uint64_t seed, long budget,
                     const char* options_json, char** record_json_out) {
  if (!g || !algorithm || !record_json_out)
    return fail(TRI_ERR_INVALID_ARGUMENT, "null argument");
  if (!known_algorithm(algorithm))
    return fail(TRI_ERR_UNKNOWN_ALGORITHM, std::string("unknown algorithm: ") + algorithm);
  return guarded([&] {
    const SolverOptions options =
        options_json ? SolverOptions::from_json(options_json) : SolverOptions{};
    const RunRecord record = solve_instance(g->graph, algorithm, seed, budget, options);
    *record_json_out = dup_string(record_to_json(record));
    return TRI_OK;
  });
}

tri_status tri_verify(const tri_graph* g, long node_budget, tri_verdict* out) {
  if (!g || !out) return fail(TRI_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const OracleResult r =
        node_budget > 0 ? exact_3color(g->graph, node_budget) : exact_3color(g->graph);
    switch (r.verdict) {
      case OracleVerdict::Colorable: *out = TRI_COLORABLE; break;
      case OracleVerdict::NotColorable: *out = TRI_NOT_COLORABLE; break;
      case OracleVerdict::BudgetExceeded: *out = TRI_BUDGET_EXCEEDED; break;
    }
    return TRI_OK;
  });
}

tri_status tri_sweep(const char* plan_path, const char* out_dir, int jobs) {
  if (!plan_path || !out_dir) return fail(TRI_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    run_sweep_to_file(plan_path, out_dir, jobs);
    return TRI_OK;
  });
}

tri_status tri_report(const char* records_dir, const char* out_dir) {
  if (!records_dir || !out_dir) return fail(TRI_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    make_report(records_dir, out_dir);
    return TRI_OK;
  });
}

tri_status tri_stats(const char* instances_csv, const char* out_dir, double alpha) {
  if (!instances_csv || !out_dir) return fail(TRI_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    make_stats_report(instances_csv, out_dir, alpha);
    return TRI_OK;
  });
}

}  // extern "C"
