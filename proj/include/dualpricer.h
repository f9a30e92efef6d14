/* C API for the dualpricer library.
 *
 * All functions return a dp_status; on failure, dp_last_error() describes
 * the problem (thread-local, valid until the next API call on the same
 * thread). Strings returned through out-parameters are heap-allocated and
 * must be released with dp_free_string().
 */
#ifndef DUALPRICER_H
#define DUALPRICER_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dp_status {
    DP_OK = 0,
    DP_ERR_VALIDATION = 1,   /* bad config, bad arguments, unknown names */
    DP_ERR_VERIFY_FAILED = 2, /* verify suite ran but at least one check failed */
    DP_ERR_NUMERIC = 3       /* non-finite results or numerical breakdown */
} dp_status;

/* Opaque parsed scenario (model, contract, simulation settings). */
typedef struct dp_scenario dp_scenario;

/* Parses a flat JSON config. On success *out owns the scenario. */
dp_status dp_scenario_from_json(const char* json_text, dp_scenario** out);
void dp_scenario_free(dp_scenario* scenario);

/* Seed precedence is handled by the caller: this setter overrides any seed
 * found in the JSON. dp_scenario_has_seed reports whether one is set. */
void dp_scenario_set_seed(dp_scenario* scenario, uint64_t seed);
int dp_scenario_has_seed(const dp_scenario* scenario);

/* Prices the scenario (closed form or lattice as the model dictates) and
 * renders a short text report; with_greeks != 0 appends finite-difference
 * greeks where the model supports them. */
dp_status dp_price(const dp_scenario* scenario, int with_greeks,
                   char** out_report);

/* Monte-Carlo path simulation under the scenario's model; emits the path
 * CSV (path_id,step,t,value). Deterministic for a fixed seed. */
dp_status dp_simulate_csv(const dp_scenario* scenario, char** out_csv);

/* Per-strike put/call/binary-put curves for every model applicable to the
 * scenario's parameters, over k in [k_min, k_max] with k_steps+1 points.
 * Long format CSV: x,series,value. */
dp_status dp_compare_csv(const dp_scenario* scenario, double k_min,
                         double k_max, int k_steps, char** out_csv);

/* The six dual/primal function curves over z in [-8, 8] and delta in
 * (0.001, 0.999). Long format CSV: x,series,value. */
dp_status dp_funcs_csv(char** out_csv);

/* Runs the verification suite. checks_csv is a comma-separated subset of
 * check names, or NULL/"" for all. Returns DP_ERR_VERIFY_FAILED when any
 * check fails (the report is still produced). Either out-pointer may be
 * NULL if that rendering is not wanted. */
dp_status dp_verify(const char* checks_csv, uint64_t seed, char** out_csv,
                    char** out_table);

/* Timing harness: 6 functions x 2 models, minimum over reps runs. */
dp_status dp_bench(uint64_t n_evals, int reps, char** out_csv,
                   char** out_table);

const char* dp_last_error(void);
void dp_free_string(char* s);

#ifdef __cplusplus
}
#endif

#endif /* DUALPRICER_H */
