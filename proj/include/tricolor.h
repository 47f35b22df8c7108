/* tricolor: graph 3-coloring solver suite — public C API.
 *
 * The core is a C++ library wrapped behind opaque handles and integer status
 * codes so that any C-ABI client (including the bundled CLI) can drive it.
 * Every function returning tri_status leaves a human-readable message for the
 * calling thread in tri_last_error() on failure.
 */
#ifndef TRICOLOR_H
#define TRICOLOR_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tri_status {
  TRI_OK = 0,
  TRI_ERR_INVALID_ARGUMENT = 1,
  TRI_ERR_PARSE = 2,
  TRI_ERR_IO = 3,
  TRI_ERR_UNKNOWN_ALGORITHM = 4,
  TRI_ERR_GENERATION = 5,
  TRI_ERR_INTERNAL = 6
} tri_status;

const char* tri_status_name(tri_status status);

/* Message describing the last failure on this thread; empty string if none. */
const char* tri_last_error(void);

/* ---- graphs ---------------------------------------------------------- */

typedef struct tri_graph tri_graph;

/* Planted 3-colorable random graph. type is "uni", "eq" or "flat"; p is the
 * edge probability as decimal text (e.g. "0.014") so the instance label keeps
 * its exact grid precision; delta in {0,1,2} skews class sizes (uni only). */
tri_status tri_graph_generate(const char* type, int n, const char* p, int delta, uint64_t seed,
                              tri_graph** out);

/* DIMACS .col I/O. Generated metadata and the planted partition round-trip
 * through `c meta` / `c planted` comment lines. */
tri_status tri_graph_read(const char* path, tri_graph** out);
tri_status tri_graph_write(const tri_graph* g, const char* path);
void tri_graph_free(tri_graph* g);

int tri_graph_order(const tri_graph* g);   /* vertex count */
long tri_graph_size(const tri_graph* g);   /* edge count */
int tri_graph_has_planted(const tri_graph* g);

/* Instance name "{type}_{n}_{p}_{seed}"; caller frees with tri_string_free. */
tri_status tri_graph_name(const tri_graph* g, char** out);

void tri_string_free(char* s);

/* ---- solving --------------------------------------------------------- */

/* algorithm: hsaea | tabucol | sawea | dsatur | moddsat | bkdsat.
 * budget: objective evaluations (hsaea, sawea), iterations (tabucol) or
 * backtracks (bkdsat). options_json: optional JSON object of per-algorithm
 * overrides (mu, lambda, tournament_k, q_init, epsilon0, tau, tau_prime,
 * local_search_steps, tabu_base, tabu_slope, saw_increment, saw_period,
 * trace_path); NULL for defaults. On success *record_json_out holds one JSON
 * run record; free with tri_string_free. */
tri_status tri_solve(const tri_graph* g, const char* algorithm, uint64_t seed, long budget,
                     const char* options_json, char** record_json_out);

/* ---- exact verification ---------------------------------------------- */

typedef enum tri_verdict {
  TRI_COLORABLE = 0,
  TRI_NOT_COLORABLE = 1,
  TRI_BUDGET_EXCEEDED = 2
} tri_verdict;

/* Backtracking 3-colorability decision; node_budget <= 0 uses the default. */
tri_status tri_verify(const tri_graph* g, long node_budget, tri_verdict* out);

/* ---- experiment harness ----------------------------------------------- */

/* Runs a plan file and writes <out_dir>/records.jsonl (header line binds the
 * records to the plan hash). jobs <= 0 uses the hardware thread count. */
tri_status tri_sweep(const char* plan_path, const char* out_dir, int jobs);

/* Reads every .jsonl under records_dir, writes aggregate.csv, instances.csv
 * and SR/AES SVG charts into out_dir. */
tri_status tri_report(const char* records_dir, const char* out_dir);

/* Reads an instances.csv, writes ranks.csv plus rank diagram SVGs. alpha
 * must be 0.05 or 0.10. */
tri_status tri_stats(const char* instances_csv, const char* out_dir, double alpha);

#ifdef __cplusplus
}
#endif

#endif /* TRICOLOR_H */
