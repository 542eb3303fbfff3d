/* C interface to the diolab core.  All entry points return a status code
 * (DL_OK on success); on failure dl_last_error() describes the problem for
 * the calling thread.  Strings returned through output parameters are owned
 * by the caller and released with dl_free(). */
#ifndef DIOLAB_H
#define DIOLAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
  DL_OK = 0,
  DL_ERR_RUNTIME = 1,
  DL_ERR_INVALID = 2, /* bad config or violated precondition */
  DL_ERR_BUDGET = 3,  /* enumeration budget exceeded */
  DL_ERR_CHECK = 4    /* --check rule failed */
};

/* Message for the most recent failure on this thread; empty string if none. */
const char* dl_last_error(void);

void dl_free(char* p);

/* Runs one experiment described by a JSON config (see README for the
 * schema).  Outputs, each optional (pass NULL to skip): summary_json gets a
 * malloc'd JSON summary, csv the tabular rows, plot_csv the (T, ratio)
 * series.  seed_override replaces the config seed when has_seed is nonzero.
 * check enables the config's "expect" rules; a failed rule returns
 * DL_ERR_CHECK (outputs are still filled in). */
int dl_run_json(const char* config_json, uint64_t seed_override, int has_seed,
                int check, char** summary_json, char** csv, char** plot_csv);

/* Riemann zeta (s > 1) and its restriction to integers coprime to q. */
int dl_zeta(double s, double* out);
int dl_zeta_q(double s, long q, double* out);

/* Mean-value constant for a certified pair.  point_set: "nonzero" |
 * "primitive" | "primitive_congruence" (with modulus q) | "all";
 * group: "sl" | "asl" | "torus". */
int dl_siegel_constant(const char* point_set, long q, int n, const char* group,
                       double* out);

/* Closed-form slab volumes with constant psi == c (sup norm). */
int dl_volume_product_const(int n, double c, double S, double T, double* out);
int dl_volume_max_const(int n, int p, const double* z, double c, double S,
                        double T, double* out);

/* Streams integer points of the point set with S < nu(v) <= T in a fixed
 * lexicographic order.  norm: "euclidean" | "sup" | "l1".  The callback
 * returns nonzero to continue, 0 to stop early. */
typedef int (*dl_point_cb)(const int* v, int n, void* user);
int dl_enumerate(const char* point_set, long q, const char* norm, double S,
                 double T, int n, dl_point_cb cb, void* user);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif
