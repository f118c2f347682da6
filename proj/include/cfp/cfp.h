/* C interface to the constrained-forest toolkit.
 *
 * All objects are opaque handles freed with their _free function. Functions
 * returning pointers yield NULL on failure; functions returning int yield a
 * negative value on failure. cfp_last_error() describes the most recent
 * failure on the calling thread. Strings returned as char* are owned by the
 * caller and released with cfp_string_free().
 *
 * Exact values (costs, bounds, ratios) are exposed as decimal or "p/q"
 * strings so no precision is lost at the boundary.
 */
#ifndef CFP_CFP_H
#define CFP_CFP_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct cfp_instance cfp_instance;
typedef struct cfp_result cfp_result;
typedef struct cfp_certificate cfp_certificate;

const char* cfp_last_error(void);
void cfp_string_free(char* s);

/* ---- instances ---- */

/* Parses the versioned instance-document text. */
cfp_instance* cfp_instance_parse(const char* text);
void cfp_instance_free(cfp_instance* inst);
char* cfp_instance_serialize(const cfp_instance* inst);

/* variant: SF_IC | SF_CR | SF_SCR | SF_CIC | PPC | FPC */
cfp_instance* cfp_gen_random(const char* variant, int n, int m, int max_cost,
                             unsigned long long seed);
/* Double-star equality-testing family; variant: SF_SCR | SF_CIC.
 * a_bits/b_bits encode the subsets A, B of {0..n-1}. */
cfp_instance* cfp_gen_lower_bound(int n, int rho, unsigned long long a_bits,
                                  unsigned long long b_bits, const char* variant);

int cfp_instance_nodes(const cfp_instance* inst);
int cfp_instance_edge_count(const cfp_instance* inst);
const char* cfp_instance_variant(const cfp_instance* inst); /* borrowed, static */
char* cfp_instance_digest(const cfp_instance* inst);
/* meta value for a key recorded by a generator, or NULL if absent */
char* cfp_instance_meta(const cfp_instance* inst, const char* key);

/* ---- runs ---- */

/* mode: "central" | "distributed" | "gw-ref". eps values are rationals "p/q"
 * (or plain integers); seed feeds the distributed mode's randomized tests. */
cfp_result* cfp_run(const cfp_instance* inst, const char* mode, const char* eps_prime,
                    const char* eps_dprime, unsigned long long seed);
void cfp_result_free(cfp_result* res);

char* cfp_result_cost(const cfp_result* res);        /* decimal integer */
char* cfp_result_lower_bound(const cfp_result* res); /* "p/q" */
char* cfp_result_ratio(const cfp_result* res);       /* "p/q" */
int cfp_result_phases(const cfp_result* res);
int cfp_result_terminals(const cfp_result* res);
int cfp_result_forest_size(const cfp_result* res);
int cfp_result_forest_edge(const cfp_result* res, int i);
int cfp_result_opened_count(const cfp_result* res);
int cfp_result_opened_facility(const cfp_result* res, int i);

/* distributed-mode accounting; zero for other modes */
long long cfp_result_total_rounds(const cfp_result* res);
long long cfp_result_total_messages(const cfp_result* res);
int cfp_result_bfs_depth(const cfp_result* res);
long long cfp_result_pa_rounds_max(const cfp_result* res);
int cfp_result_phase_count(const cfp_result* res);
/* rounds a building block (SSSP, ECR, CMI, MSF, RPS, FFE, CC, BFS, PART)
 * used in one phase; 0 when the tag did not run */
long long cfp_result_phase_rounds(const cfp_result* res, int phase, const char* tag);

/* ---- oracle & certification ---- */

/* Exact optimum as a decimal string, or NULL when the instance exceeds the
 * enumeration limits (edges > max_oracle_edges or the built-in size gates). */
char* cfp_brute_force_opt(const cfp_instance* inst, int max_oracle_edges);

/* 1 = primal feasible, 0 = infeasible, negative = error. */
int cfp_check_feasible(const cfp_instance* inst, const cfp_result* res);

/* Re-derives the certificate chain from raw data. with_oracle != 0 also
 * checks LB <= OPT <= c(F) when the instance fits the oracle gates. */
cfp_certificate* cfp_certify(const cfp_instance* inst, const cfp_result* res,
                             const char* eps_prime, const char* eps_dprime, int with_oracle,
                             int max_oracle_edges);
int cfp_certificate_ok(const cfp_certificate* cert);
char* cfp_certificate_text(const cfp_certificate* cert);
void cfp_certificate_free(cfp_certificate* cert);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CFP_CFP_H */
