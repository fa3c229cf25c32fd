#ifndef SPINLAB_H
#define SPINLAB_H

/* C interface to the spinlab library: finite-graph spin O(N) models,
 * random-walk Green's functions, exact Ising enumeration, Monte Carlo
 * sampling, and Gaussian-domination analysis.
 *
 * Conventions:
 *   - vertices are 1-based, matching the text formats;
 *   - every fallible call returns spinlab_status; on failure the out
 *     parameters are untouched and spinlab_last_error() describes the
 *     problem (thread-local storage);
 *   - matrices are written row-major into caller-allocated buffers.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define SPINLAB_API_VERSION 1

/* Mirrors the library's internal error codes; values are stable. */
typedef enum spinlab_status {
  SPINLAB_OK = 0,
  SPINLAB_SELF_LOOP = 1,
  SPINLAB_DUPLICATE_EDGE = 2,
  SPINLAB_DISCONNECTED = 3,
  SPINLAB_INVALID_PARAMETER = 4,
  SPINLAB_SAME_VERTEX = 5,
  SPINLAB_DIMENSION_MISMATCH = 6,
  SPINLAB_SOLVER_FAILURE = 7,
  SPINLAB_TOO_LARGE = 8,
  SPINLAB_WRONG_N = 9,
  SPINLAB_UNSUPPORTED_N = 10,
  SPINLAB_INVALID_DEPTH = 11,
  SPINLAB_NONPOSITIVE_BETA = 12,
  SPINLAB_INSUFFICIENT_SAMPLES = 13,
  SPINLAB_CONVERGENCE_FAILURE = 14,
  SPINLAB_MISSING_VERDICT = 15,
  SPINLAB_IO_ERROR = 16,
  SPINLAB_PARSE_ERROR = 17,
  SPINLAB_INTERNAL_ERROR = 18
} spinlab_status;

const char* spinlab_status_name(spinlab_status status);

/* Message for the most recent failure on this thread. Never NULL. */
const char* spinlab_last_error(void);

/* ---- graphs ---------------------------------------------------------- */

typedef struct spinlab_graph spinlab_graph;

/* Accepts generator strings ("star:11", "tree:4", "paths:3x3",
 * "torus:4x2d", "path:5", "cycle:6", "complete:4", "file:PATH") or a bare
 * path to an edge-list file. */
spinlab_status spinlab_graph_from_spec(const char* spec, spinlab_graph** out);

/* pairs holds 2*n_pairs vertex labels: i0 j0 i1 j1 ... */
spinlab_status spinlab_graph_from_edges(const int* pairs, size_t n_pairs, spinlab_graph** out);

void spinlab_graph_free(spinlab_graph* g);

int spinlab_graph_n(const spinlab_graph* g);
int spinlab_graph_m(const spinlab_graph* g);
int spinlab_graph_degree(const spinlab_graph* g, int v);

/* The spec string the graph was built from; owned by the graph. */
const char* spinlab_graph_spec(const spinlab_graph* g);

spinlab_status spinlab_graph_save(const spinlab_graph* g, const char* path);

/* ---- Green's functions ----------------------------------------------- */

/* Expected visits to i before absorption at j, one value per start
 * vertex; out must hold n doubles. */
spinlab_status spinlab_greens(const spinlab_graph* g, int i, int j, double* out);

spinlab_status spinlab_renormalized_green(const spinlab_graph* g, int x, int y, double* out);

spinlab_status spinlab_greens_rw(const spinlab_graph* g, int i, int j, int s, uint64_t trials,
                                 uint64_t seed, int threads, double* out_mean,
                                 double* out_stderr);

/* ---- exact Ising engine (N = 1, n <= 24) ----------------------------- */

#define SPINLAB_ISING_HALF 0 /* site weights 1/2, 1/2 */
#define SPINLAB_ISING_UNIT 1 /* site weights 1, 1 */

/* Shifted partition sum; h is NULL (no shift) or n doubles. */
spinlab_status spinlab_exact_partition(const spinlab_graph* g, double beta, const double* h,
                                       int convention, double* out);

spinlab_status spinlab_exact_correlation(const spinlab_graph* g, double beta, int x, int y,
                                         double* out);

/* out must hold n*n doubles. */
spinlab_status spinlab_exact_correlation_matrix(const spinlab_graph* g, double beta, double* out);

/* Second derivative of the shifted partition sum along direction v
 * (n doubles) at shift zero. */
spinlab_status spinlab_directional_second_derivative(const spinlab_graph* g, double beta,
                                                     const double* v, int convention,
                                                     double* out);

/* ---- closed forms ---------------------------------------------------- */

spinlab_status spinlab_tree_correlation(double beta, int dist, double* out);

spinlab_status spinlab_parallel_paths_correlation(double beta, int l, int d, double* out);

spinlab_status spinlab_binary_tree_hessian(double beta, int depth, double* out);

spinlab_status spinlab_binary_tree_threshold(double* out);

/* quad_nodes <= 0 selects the default rule (128 nodes). */
spinlab_status spinlab_star_hessian(double beta, int n_components, int n0, int quad_nodes,
                                    double* out);

spinlab_status spinlab_minimal_star_size(double beta, int n_components, int quad_nodes,
                                         int* out);

/* ---- Monte Carlo ----------------------------------------------------- */

typedef struct spinlab_chain_config {
  uint64_t sweeps;        /* total, including burn-in */
  uint64_t burn_in;
  uint64_t thin;
  double proposal_width;  /* <= 0 selects 1/sqrt(1+beta) */
  int root_pinned;        /* nonzero freezes vertex 1 at the north pole */
  int tune_width;         /* nonzero adapts the width during burn-in */
  uint64_t seed;
  uint64_t stream;
} spinlab_chain_config;

void spinlab_chain_config_default(spinlab_chain_config* cfg);

typedef struct spinlab_chain spinlab_chain;

spinlab_status spinlab_run_chain(const spinlab_graph* g, int n_components, double beta,
                                 const spinlab_chain_config* cfg, spinlab_chain** out);

void spinlab_chain_free(spinlab_chain* chain);

size_t spinlab_chain_count(const spinlab_chain* chain);
int spinlab_chain_components(const spinlab_chain* chain);
double spinlab_chain_acceptance_rate(const spinlab_chain* chain);
double spinlab_chain_final_width(const spinlab_chain* chain);

/* Binary sample dump (32-byte header + little-endian float64 data). */
spinlab_status spinlab_chain_save(const spinlab_chain* chain, const char* path);

spinlab_status spinlab_estimate_correlation(const spinlab_chain* chain, int x, int y,
                                            double* out_mean, double* out_stderr,
                                            size_t* out_samples);

/* beta * E |sigma_x - sigma_y|^2 with batch-means errors. */
spinlab_status spinlab_estimate_rescaled_distance(const spinlab_chain* chain, double beta, int x,
                                                  int y, double* out_mean, double* out_stderr,
                                                  size_t* out_samples);

/* K matrix (the beta-scaled first-component covariance of L sigma) and its
 * per-entry error bars; both buffers hold n*n doubles. */
spinlab_status spinlab_estimate_k_matrix(const spinlab_chain* chain, double* out_values,
                                         double* out_stderr);

/* ---- Gaussian-domination analysis ------------------------------------ */

#define SPINLAB_VERDICT_DOMINATED 0
#define SPINLAB_VERDICT_VIOLATED 1
#define SPINLAB_VERDICT_INCONCLUSIVE 2

#define SPINLAB_METHOD_EXACT 0
#define SPINLAB_METHOD_MONTE_CARLO 1

typedef struct spinlab_gd_report spinlab_gd_report;

/* Exact route: Ising enumeration of the Hessian building block. */
spinlab_status spinlab_gd_exact(const spinlab_graph* g, double beta, spinlab_gd_report** out);

/* Monte Carlo route: any N, error bars propagate into the verdict. */
spinlab_status spinlab_gd_from_chain(const spinlab_chain* chain, spinlab_gd_report** out);

void spinlab_gd_report_free(spinlab_gd_report* report);

int spinlab_gd_verdict(const spinlab_gd_report* report);
const char* spinlab_gd_verdict_name(const spinlab_gd_report* report);
int spinlab_gd_method(const spinlab_gd_report* report);
double spinlab_gd_lambda_max(const spinlab_gd_report* report);
double spinlab_gd_lambda_ci(const spinlab_gd_report* report);
double spinlab_gd_beta(const spinlab_gd_report* report);
int spinlab_gd_size(const spinlab_gd_report* report);
/* out must hold n doubles (unit vector, zero mean). */
spinlab_status spinlab_gd_worst_direction(const spinlab_gd_report* report, double* out);

/* Correlation floor 1 - N u_{xy}(x) / (2 beta d(x)). */
spinlab_status spinlab_gde_lower_bound(const spinlab_graph* g, double beta, int n_components,
                                       int x, int y, double* out);

/* 1/(8m): domination holds on any graph below this inverse temperature. */
spinlab_status spinlab_high_temp_threshold(const spinlab_graph* g, double* out);

/* Audits every vertex pair against the domination bound. rows must hold
 * 5 * n(n-1)/2 doubles, filled as (x, y, correlation, bound, margin) per
 * pair in lexicographic order. corr is the n*n correlation matrix;
 * corr_stderr is NULL for exact input. The report must match (g, beta).
 * all_pass is meaningful only when asserted is nonzero. */
spinlab_status spinlab_audit_gde(const spinlab_graph* g, double beta, int n_components,
                                 const spinlab_gd_report* report, const double* corr,
                                 const double* corr_stderr, double* rows, int* asserted,
                                 int* all_pass);

/* ---- Gaussian free field -------------------------------------------- */

/* Covariance of the field pinned at root, embedded over all n vertices
 * (root row/column zero); out must hold n*n doubles. */
spinlab_status spinlab_gff_covariance(const spinlab_graph* g, int root, double* out);

/* count independent field draws; out must hold count*n*components doubles,
 * sample-major then vertex-major. */
spinlab_status spinlab_gff_sample(const spinlab_graph* g, int components, int root, size_t count,
                                  uint64_t seed, uint64_t stream, double* out);

/* Low-temperature comparison. betas must be positive and increasing; rows
 * must hold 5*n_betas doubles, filled per beta as (beta, moment, moment
 * stderr, moment target, ks). */
spinlab_status spinlab_wcon(const spinlab_graph* g, int n_components, const double* betas,
                            size_t n_betas, int x, int y, const spinlab_chain_config* cfg,
                            size_t gff_count, double* rows);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SPINLAB_H */
