#include "gd.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "enumerate.hpp"
#include "greens.hpp"
#include "rng.hpp"

namespace spinlab {

namespace {

constexpr double kExactTolerance = 1e-9;
constexpr int kDenseLimit = 500;

// Sign convention for reported eigenvectors: first non-negligible entry
// positive. Removes the arbitrary overall sign so reports are reproducible.
void canonicalize(Eigen::VectorXd* v) {
  for (int i = 0; i < v->size(); ++i) {
    if (std::abs((*v)(i)) > 1e-12) {
      if ((*v)(i) < 0.0) *v = -*v;
      return;
    }
  }
}

void check_square(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() < 2)
    raise(ErrorCode::InvalidParameter, "need a square matrix of size >= 2");
  if (!m.allFinite()) raise(ErrorCode::InvalidParameter, "matrix has non-finite entries");
}

}  // namespace

HessianForm hessian_from_k(const Eigen::MatrixXd& k, const Graph& g, double beta) {
  if (k.rows() != g.n() || k.cols() != g.n())
    raise(ErrorCode::DimensionMismatch, "K dimension does not match the graph");
  if (!k.isApprox(k.transpose(), 1e-12))
    raise(ErrorCode::InvalidParameter, "K must be symmetric");
  HessianForm form;
  form.beta = beta;
  form.k = k;
  form.laplacian = laplacian_matrix(g);
  form.m = beta * k - form.laplacian;
  form.k_stderr = Eigen::MatrixXd::Zero(g.n(), g.n());
  form.noisy = false;
  return form;
}

HessianForm hessian_from_exact(const Graph& g, double beta) {
  return hessian_from_k(exact_laplacian_covariance(g, beta), g, beta);
}

HessianForm hessian_from_chain(const ChainSamples& chain) {
  if (chain.graph == nullptr) raise(ErrorCode::InvalidParameter, "chain has no graph attached");
  const Graph& g = *chain.graph;
  const KMatrixEstimate est = estimate_k_matrix(chain);
  HessianForm form;
  form.beta = chain.beta;
  // est.value already includes the beta factor, so M = est.value - L; the
  // stored unscaled K is recovered where possible.
  form.k = chain.beta > 0.0 ? Eigen::MatrixXd(est.value / chain.beta)
                            : Eigen::MatrixXd::Zero(g.n(), g.n());
  form.laplacian = laplacian_matrix(g);
  form.m = est.value - form.laplacian;
  form.k_stderr = est.stderror;
  form.noisy = true;
  return form;
}

std::pair<double, Eigen::VectorXd> extremal_eigenpair_dense(const Eigen::MatrixXd& m) {
  check_square(m);
  const int n = static_cast<int>(m.rows());

  // Householder reflector mapping e_1 to the normalized constant vector;
  // its remaining columns are an orthonormal basis of the complement.
  Eigen::VectorXd u = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  u(0) -= 1.0;
  u.normalize();
  const Eigen::MatrixXd reflector = Eigen::MatrixXd::Identity(n, n) - 2.0 * u * u.transpose();
  const Eigen::MatrixXd basis = reflector.rightCols(n - 1);

  const Eigen::MatrixXd reduced = basis.transpose() * m * basis;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      (reduced + reduced.transpose()) / 2.0);
  if (solver.info() != Eigen::Success)
    raise(ErrorCode::SolverFailure, "symmetric eigendecomposition failed");

  const double lambda = solver.eigenvalues()(n - 2);
  Eigen::VectorXd v = basis * solver.eigenvectors().col(n - 2);
  v.array() -= v.mean();  // exact deflation against rounding
  v.normalize();
  canonicalize(&v);
  return {lambda, v};
}

std::pair<double, Eigen::VectorXd> extremal_eigenpair_power(const Eigen::MatrixXd& m,
                                                            double tol, long max_iter) {
  check_square(m);
  const int n = static_cast<int>(m.rows());

  // Shift so the target eigenvalue is also the largest in magnitude:
  // M + c I with c = -(Gershgorin lower bound) makes the spectrum
  // nonnegative without changing eigenvectors.
  double lower = 0.0;
  for (int i = 0; i < n; ++i) {
    double radius = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != i) radius += std::abs(m(i, j));
    lower = std::min(lower, m(i, i) - radius);
  }
  const double shift = -lower;

  Rng rng(0x5eed, 0);
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x(i) = rng.next_double() - 0.5;
  const auto deflate = [&](Eigen::VectorXd* vec) { vec->array() -= vec->mean(); };
  deflate(&x);
  x.normalize();

  double rayleigh = x.dot(m * x);
  for (long it = 0; it < max_iter; ++it) {
    Eigen::VectorXd y = m * x + shift * x;
    deflate(&y);
    const double norm = y.norm();
    if (norm < 1e-300) {
      // M + shift annihilates the complement: the form is a multiple of the
      // identity there, any admissible direction is extremal.
      return {rayleigh, x};
    }
    x = y / norm;
    const double next = x.dot(m * x);
    if (std::abs(next - rayleigh) < tol) {
      canonicalize(&x);
      return {next, x};
    }
    rayleigh = next;
  }
  raise(ErrorCode::ConvergenceFailure, "power iteration did not converge");
}

std::pair<double, Eigen::VectorXd> extremal_eigenpair(const Eigen::MatrixXd& m) {
  return m.rows() <= kDenseLimit ? extremal_eigenpair_dense(m) : extremal_eigenpair_power(m);
}

GDReport gd_verdict(const HessianForm& form) {
  auto [lambda, direction] = extremal_eigenpair(form.m);

  GDReport report;
  report.lambda_max = lambda;
  report.worst_direction = direction;
  report.beta = form.beta;
  report.n = static_cast<int>(form.m.rows());

  if (!form.noisy) {
    report.method = VerdictMethod::Exact;
    report.lambda_ci = 0.0;
    report.verdict = lambda <= kExactTolerance ? Verdict::Dominated : Verdict::Violated;
    return report;
  }

  report.method = VerdictMethod::MonteCarlo;
  // First-order perturbation: d lambda = v.(dK) v. Entry errors are treated
  // as independent over the upper triangle; the 2x factor absorbs what the
  // linearization misses.
  double variance = 0.0;
  const int n = report.n;
  for (int i = 0; i < n; ++i) {
    const double diag = direction(i) * direction(i) * form.k_stderr(i, i);
    variance += diag * diag;
    for (int j = i + 1; j < n; ++j) {
      const double off = 2.0 * direction(i) * direction(j) * form.k_stderr(i, j);
      variance += off * off;
    }
  }
  report.lambda_ci = 2.0 * std::sqrt(variance);
  if (lambda + report.lambda_ci < 0.0) report.verdict = Verdict::Dominated;
  else if (lambda - report.lambda_ci > 0.0) report.verdict = Verdict::Violated;
  else report.verdict = Verdict::Inconclusive;
  return report;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Dominated: return "Dominated";
    case Verdict::Violated: return "Violated";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

double gde_lower_bound(const Graph& g, double beta, int n_components, int x, int y) {
  if (!(beta > 0.0)) raise(ErrorCode::NonpositiveBeta, "bound needs beta > 0");
  if (n_components < 1) raise(ErrorCode::InvalidParameter, "N must be >= 1");
  if (x == y) raise(ErrorCode::SameVertex, "bound needs two distinct vertices");
  const double green = renormalized_green(g, x, y);
  return 1.0 - n_components * green / (2.0 * beta);
}

AuditTable audit_gde(const Graph& g, double beta, int n_components, const GDReport& report,
                     const Eigen::MatrixXd& correlations, const Eigen::MatrixXd* corr_stderr) {
  if (report.n != g.n() || report.beta != beta)
    raise(ErrorCode::MissingVerdict, "no verdict for this graph and beta");
  if (correlations.rows() != g.n() || correlations.cols() != g.n())
    raise(ErrorCode::DimensionMismatch, "correlation matrix does not match the graph");

  AuditTable table;
  table.asserted = report.verdict == Verdict::Dominated;
  for (int x = 1; x <= g.n(); ++x) {
    for (int y = x + 1; y <= g.n(); ++y) {
      AuditRow row;
      row.x = x;
      row.y = y;
      row.correlation = correlations(x - 1, y - 1);
      row.bound = gde_lower_bound(g, beta, n_components, x, y);
      row.margin = row.correlation - row.bound;
      double tolerance = 1e-9;
      if (corr_stderr != nullptr) tolerance += 4.0 * (*corr_stderr)(x - 1, y - 1);
      row.pass = row.margin >= -tolerance;
      table.all_pass = table.all_pass && row.pass;
      table.rows.push_back(row);
    }
  }
  return table;
}

double high_temp_threshold(const Graph& g) { return 1.0 / (8.0 * g.m()); }

}  // namespace spinlab
