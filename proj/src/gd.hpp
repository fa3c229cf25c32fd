#pragma once

#include <cstdint>

#include "graph.hpp"
#include "mc.hpp"

namespace spinlab {

// Quadratic form deciding the second-order domination test. For a direction
// v orthogonal to constants (per spin component), v.M v has the sign of the
// second derivative of the shifted partition sum along v:
//   M = beta K - L,  K = E[(L sigma^1)(L sigma^1)^T].
struct HessianForm {
  double beta = 0.0;
  Eigen::MatrixXd k;          // unscaled covariance
  Eigen::MatrixXd laplacian;
  Eigen::MatrixXd m;
  Eigen::MatrixXd k_stderr;   // stderr of beta*K entries; zero when exact
  bool noisy = false;
};

HessianForm hessian_from_k(const Eigen::MatrixXd& k, const Graph& g, double beta);

// Exact route: K by Ising enumeration (N=1, n <= 24).
HessianForm hessian_from_exact(const Graph& g, double beta);

// Monte Carlo route: K from estimate_k_matrix (which already carries the
// beta factor), valid for any N.
HessianForm hessian_from_chain(const ChainSamples& chain);

// Largest eigenvalue of M restricted to the complement of the constant
// vector, with its (unit, mean-zero, sign-canonicalized) eigenvector.
// The generic entry point picks dense eigendecomposition for n <= 500 and
// shifted power iteration with deflation above.
std::pair<double, Eigen::VectorXd> extremal_eigenpair(const Eigen::MatrixXd& m);
std::pair<double, Eigen::VectorXd> extremal_eigenpair_dense(const Eigen::MatrixXd& m);
std::pair<double, Eigen::VectorXd> extremal_eigenpair_power(const Eigen::MatrixXd& m,
                                                            double tol = 1e-10,
                                                            long max_iter = 100000);

enum class Verdict { Dominated, Violated, Inconclusive };
enum class VerdictMethod { Exact, MonteCarlo };

struct GDReport {
  Verdict verdict = Verdict::Inconclusive;
  double lambda_max = 0.0;
  double lambda_ci = 0.0;  // half-width; 0 for exact
  Eigen::VectorXd worst_direction;
  VerdictMethod method = VerdictMethod::Exact;
  double beta = 0.0;
  int n = 0;
};

// Exact form: Dominated iff lambda_max <= 1e-9, else Violated. Noisy form:
// the eigenvalue CI comes from first-order perturbation through the K error
// bars, inflated 2x; verdicts only outside the CI, otherwise Inconclusive.
GDReport gd_verdict(const HessianForm& form);

const char* verdict_name(Verdict v);

// Correlation floor implied by domination: 1 - N u_{xy}(x) / (2 beta d(x)).
double gde_lower_bound(const Graph& g, double beta, int n_components, int x, int y);

struct AuditRow {
  int x = 0, y = 0;
  double correlation = 0.0;
  double bound = 0.0;
  double margin = 0.0;  // correlation - bound
  bool pass = true;
};
struct AuditTable {
  std::vector<AuditRow> rows;  // all unordered pairs, x < y
  bool asserted = false;       // true when the verdict was Dominated
  bool all_pass = true;
};

// Checks every pairwise correlation against its domination bound. The
// tolerance is 1e-9 plus 4 standard errors where correlations are noisy
// (pass corr_stderr = nullptr for exact input). The report must belong to
// this (graph, beta) pair or MissingVerdict is raised; bounds are always
// reported, but only a Dominated verdict asserts them.
AuditTable audit_gde(const Graph& g, double beta, int n_components, const GDReport& report,
                     const Eigen::MatrixXd& correlations, const Eigen::MatrixXd* corr_stderr);

// Inverse temperature below which domination is guaranteed on any graph
// with m edges: 1/(8m).
double high_temp_threshold(const Graph& g);

}  // namespace spinlab
