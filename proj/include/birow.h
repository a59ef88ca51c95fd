/* C interface for the birational rowmotion library.
 *
 * All functions are thread-compatible: handles are not shared state, and the
 * error message store is thread-local. Strings returned through out-pointers
 * are heap-allocated and must be released with birow_string_free().
 *
 * JSON conventions (shared with the CLI):
 *   ring descriptor  "q" | "mat:N" | "trop", or {"kind": ..., "dim": N}
 *   poset            {"elements": [names...], "covers": [[lower, upper]...]}
 *   labeling         {"ring": <descriptor>, "labels": {"BOT": ..., ...}}
 *   rationals        "p/q" strings; matrices are row-major arrays of them;
 *                    tropical values are {"t": "p/q"} or {"t": "-inf"}
 */
#ifndef BIROW_H
#define BIROW_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum birow_status {
    BIROW_OK = 0,
    BIROW_ERR_INVALID_ARGUMENT = 1,
    BIROW_ERR_PARSE = 2,
    BIROW_ERR_UNSUPPORTED = 3,
    BIROW_ERR_INTERNAL = 4
} birow_status;

/* Message for the most recent failing call on this thread; never NULL. */
const char* birow_last_error(void);

void birow_string_free(char* s);

const char* birow_version(void);

typedef struct birow_poset birow_poset;
typedef struct birow_labeling birow_labeling;

/* Family specs: rect:PxQ | delta:P | nabla:P | tria:P | trap:P,S | claw. */
birow_status birow_poset_create(const char* spec, birow_poset** out);
birow_status birow_poset_create_from_json(const char* json, birow_poset** out);
void birow_poset_destroy(birow_poset* p);
birow_status birow_poset_to_json(const birow_poset* p, char** out_json);
birow_status birow_poset_size(const birow_poset* p, int* out_size);

/* Seed-deterministic labeling with every label invertible. ring_json may be
 * a spec string ("mat:2") or a descriptor object. */
birow_status birow_labeling_random(const birow_poset* p, const char* ring_json, uint64_t seed,
                                   long entry_bound, birow_labeling** out);
birow_status birow_labeling_create_from_json(const birow_poset* p, const char* json,
                                             birow_labeling** out);
void birow_labeling_destroy(birow_labeling* f);
birow_status birow_labeling_to_json(const birow_poset* p, const birow_labeling* f,
                                    char** out_json);

/* Orbit prefix [f, Rf, ..., R^steps f] as JSON; iteration stops early when a
 * toggle fails to invert ("tail": "undefined") or labels outgrow the size
 * guard ("tail": "blowup"). */
birow_status birow_orbit_json(const birow_poset* p, const birow_labeling* f, long steps,
                              char** out_json);

/* Down/up slacks of every poset element for iterates 0..max_ell, as an array
 * of {"element", "ell", "down", "up"} records ("undefined" where the slack
 * does not exist). */
birow_status birow_slack_table_json(const birow_poset* p, const birow_labeling* f, long max_ell,
                                    char** out_json);

/* Runs one named checker with a JSON config {"poset", "ring", "seed",
 * "entry_bound", "max_iterations", "trials"} (all optional) and returns its
 * verdict as JSON. Check names: periodicity | reciprocity |
 * reciprocity_implies_periodicity | bottom_top | invariant_sum | conjecture |
 * claw_counterexample | tropical_periodicity. */
birow_status birow_run_check(const char* check_name, const char* config_json,
                             char** out_report_json);

#ifdef __cplusplus
}
#endif

#endif /* BIROW_H */
