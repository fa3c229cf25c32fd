#include "spinlab.h"

#include <cstring>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "closed_forms.hpp"
#include "enumerate.hpp"
#include "errors.hpp"
#include "gd.hpp"
#include "gff.hpp"
#include "graph.hpp"
#include "greens.hpp"
#include "mc.hpp"
#include "star.hpp"

using spinlab::ChainConfig;
using spinlab::ChainSamples;
using spinlab::ErrorCode;
using spinlab::Graph;
using spinlab::IsingConvention;

extern "C" {
struct spinlab_graph {
  Graph rep;
};
struct spinlab_chain {
  std::unique_ptr<Graph> graph;  // keeps rep.graph valid for the handle's lifetime
  ChainSamples rep;
};
struct spinlab_gd_report {
  spinlab::GDReport rep;
};
}  // extern "C"

namespace {

thread_local std::string t_last_error = "";

// Runs fn, translating exceptions into status codes and the thread-local
// message. Out parameters are only written when fn completes.
template <typename Fn>
spinlab_status guarded(Fn&& fn) {
  try {
    fn();
    return SPINLAB_OK;
  } catch (const spinlab::Error& e) {
    t_last_error = e.what();
    return static_cast<spinlab_status>(static_cast<int>(e.code()));
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return SPINLAB_INTERNAL_ERROR;
  } catch (...) {
    t_last_error = "unidentified failure";
    return SPINLAB_INTERNAL_ERROR;
  }
}

void need(bool ok, const char* what) {
  if (!ok) spinlab::raise(ErrorCode::InvalidParameter, std::string("null ") + what);
}

IsingConvention convention_from(int convention) {
  if (convention == SPINLAB_ISING_HALF) return IsingConvention::Half;
  if (convention == SPINLAB_ISING_UNIT) return IsingConvention::Unit;
  spinlab::raise(ErrorCode::InvalidParameter,
                 "convention must be SPINLAB_ISING_HALF or SPINLAB_ISING_UNIT");
}

ChainConfig config_from(const spinlab_chain_config* cfg) {
  need(cfg != nullptr, "chain config");
  ChainConfig cc;
  cc.sweeps = cfg->sweeps;
  cc.burn_in = cfg->burn_in;
  cc.thin = cfg->thin;
  cc.proposal_width = cfg->proposal_width;
  cc.root_pinned = cfg->root_pinned != 0;
  cc.tune_width = cfg->tune_width != 0;
  cc.seed = cfg->seed;
  cc.stream = cfg->stream;
  return cc;
}

void copy_matrix(const Eigen::MatrixXd& m, double* out) {
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out[r * m.cols() + c] = m(r, c);
}

}  // namespace

extern "C" {

const char* spinlab_status_name(spinlab_status status) {
  if (status < SPINLAB_OK || status > SPINLAB_INTERNAL_ERROR) return "Unknown";
  return spinlab::error_code_name(static_cast<ErrorCode>(status));
}

const char* spinlab_last_error(void) { return t_last_error.c_str(); }

/* ---- graphs ---------------------------------------------------------- */

spinlab_status spinlab_graph_from_spec(const char* spec, spinlab_graph** out) {
  return guarded([&] {
    need(spec != nullptr, "spec");
    need(out != nullptr, "out");
    *out = new spinlab_graph{spinlab::parse_graph_spec(spec)};
  });
}

spinlab_status spinlab_graph_from_edges(const int* pairs, size_t n_pairs, spinlab_graph** out) {
  return guarded([&] {
    need(pairs != nullptr, "pairs");
    need(out != nullptr, "out");
    std::vector<std::pair<int, int>> list;
    list.reserve(n_pairs);
    for (size_t e = 0; e < n_pairs; ++e) list.emplace_back(pairs[2 * e], pairs[2 * e + 1]);
    *out = new spinlab_graph{spinlab::from_edge_list(list)};
  });
}

void spinlab_graph_free(spinlab_graph* g) { delete g; }

int spinlab_graph_n(const spinlab_graph* g) { return g ? g->rep.n() : 0; }

int spinlab_graph_m(const spinlab_graph* g) { return g ? g->rep.m() : 0; }

int spinlab_graph_degree(const spinlab_graph* g, int v) {
  if (!g || v < 1 || v > g->rep.n()) return 0;
  return g->rep.degree(v);
}

const char* spinlab_graph_spec(const spinlab_graph* g) {
  return g ? g->rep.spec().c_str() : "";
}

spinlab_status spinlab_graph_save(const spinlab_graph* g, const char* path) {
  return guarded([&] {
    need(g != nullptr, "graph");
    need(path != nullptr, "path");
    spinlab::save_edge_list(g->rep, path);
  });
}

/* ---- Green's functions ----------------------------------------------- */

spinlab_status spinlab_greens(const spinlab_graph* g, int i, int j, double* out) {
  return guarded([&] {
    need(g != nullptr, "graph");
    need(out != nullptr, "out");
    const spinlab::GreenTable table = spinlab::greens_function(g->rep, i, j);
    for (int s = 1; s <= g->rep.n(); ++s) out[s - 1] = table.at(s);
  });
}

spinlab_status spinlab_renormalized_green(const spinlab_graph* g, int x, int y, double* out) {
  return guarded([&] {
    need(g != nullptr, "graph");
    need(out != nullptr, "out");
    *out = spinlab::renormalized_green(g->rep, x, y);
  });
}

spinlab_status spinlab_greens_rw(const spinlab_graph* g, int i, int j, int s, uint64_t trials,
                                 uint64_t seed, int threads, double* out_mean,
                                 double* out_stderr) {
  return guarded([&] {
    need(g != nullptr, "graph");
    need(out_mean != nullptr, "out_mean");
    need(out_stderr != nullptr, "out_stderr");
    const spinlab::Estimate est = spinlab::greens_rw_oracle(g->rep, i, j, s, trials, seed, threads);
    *out_mean = est.mean;
    *out_stderr = est.stderror;
  });
}

/* ---- exact Ising engine ---------------------------------------------- */

spinlab_status spinlab_exact_partition(const spinlab_graph* g, double beta, const double* h,
                                       int convention, double* out) {
  return guarded([&] {
    need(g != nullptr, "graph");
    need(out != nullptr, "out");
    std::vector<double> shift;
    if (h != nullptr) shift.assign(h, h + g->rep.n());
    *out = spinlab::exact_partition(g->rep, beta, shift, convention_from(convention));
  });
}

spinlab_status spinlab_exact_correlation(const spinlab_graph* g, double beta, int x, int y,
                                         double* out) {
  return guarded([&] {
    need(g != nullptr, "graph");
    need(out != nullptr, "out");
    *out = spinlab::exact_correlation(g->rep, beta, x, y);
  });
}

spinlab_status spinlab_exact_correlation_matrix(const spinlab_graph* g, double beta, double* out) {
  return guarded([&] {
    need(g != nullptr, "graph");
    need(out != nullptr, "out");
    copy_matrix(spinlab::exact_correlation_matrix(g->rep, beta), out);
  });
}

spinlab_status spinlab_directional_second_derivative(const spinlab_graph* g, double beta,
                                                     const double* v, int convention,
                                                     double* out) {
  return guarded([&] {
    need(g != nullptr, "graph");
    need(v != nullptr, "v");
    need(out != nullptr, "out");
    const std::vector<double> direction(v, v + g->rep.n());
    *out = spinlab::directional_second_derivative(g->rep, beta, direction,
                                                  convention_from(convention));
  });
}

/* ---- closed forms ---------------------------------------------------- */

spinlab_status spinlab_tree_correlation(double beta, int dist, double* out) {
  return guarded([&] {
    need(out != nullptr, "out");
    *out = spinlab::tree_correlation_closed_form(beta, dist);
  });
}

spinlab_status spinlab_parallel_paths_correlation(double beta, int l, int d, double* out) {
  return guarded([&] {
    need(out != nullptr, "out");
    *out = spinlab::parallel_paths_correlation_closed_form(beta, l, d);
  });
}

spinlab_status spinlab_binary_tree_hessian(double beta, int depth, double* out) {
  return guarded([&] {
    need(out != nullptr, "out");
    *out = spinlab::binary_tree_hessian_closed_form(beta, depth);
  });
}

spinlab_status spinlab_binary_tree_threshold(double* out) {
  return guarded([&] {
    need(out != nullptr, "out");
    *out = spinlab::binary_tree_divergence_threshold();
  });
}

spinlab_status spinlab_star_hessian(double beta, int n_components, int n0, int quad_nodes,
                                    double* out) {
  return guarded([&] {
    need(out != nullptr, "out");
    const int nodes = quad_nodes > 0 ? quad_nodes : 128;
    *out = spinlab::star_hessian(beta, n_components, n0, nodes);
  });
}

spinlab_status spinlab_minimal_star_size(double beta, int n_components, int quad_nodes,
                                         int* out) {
  return guarded([&] {
    need(out != nullptr, "out");
    const int nodes = quad_nodes > 0 ? quad_nodes : 128;
    *out = spinlab::minimal_star_size(beta, n_components, nodes);
  });
}

/* ---- Monte Carlo ----------------------------------------------------- */

void spinlab_chain_config_default(spinlab_chain_config* cfg) {
  if (!cfg) return;
  const ChainConfig defaults;
  cfg->sweeps = defaults.sweeps;
  cfg->burn_in = defaults.burn_in;
  cfg->thin = defaults.thin;
  cfg->proposal_width = defaults.proposal_width;
  cfg->root_pinned = defaults.root_pinned ? 1 : 0;
  cfg->tune_width = defaults.tune_width ? 1 : 0;
  cfg->seed = defaults.seed;
  cfg->stream = defaults.stream;
}

spinlab_status spinlab_run_chain(const spinlab_graph* g, int n_components, double beta,
                                 const spinlab_chain_config* cfg, spinlab_chain** out) {
  return guarded([&] {
    need(g != nullptr, "graph");
    need(out != nullptr, "out");
    // The chain handle owns a private copy of the graph so the caller may
    // free theirs in any order.
    auto owned = std::make_unique<Graph>(g->rep);
    ChainSamples samples = spinlab::run_chain(*owned, n_components, beta, config_from(cfg));
    *out = new spinlab_chain{std::move(owned), std::move(samples)};
  });
}

void spinlab_chain_free(spinlab_chain* chain) { delete chain; }

size_t spinlab_chain_count(const spinlab_chain* chain) { return chain ? chain->rep.count() : 0; }

int spinlab_chain_components(const spinlab_chain* chain) {
  return chain ? chain->rep.n_components : 0;
}

double spinlab_chain_acceptance_rate(const spinlab_chain* chain) {
  return chain ? chain->rep.acceptance_rate : 0.0;
}

double spinlab_chain_final_width(const spinlab_chain* chain) {
  return chain ? chain->rep.final_width : 0.0;
}

spinlab_status spinlab_chain_save(const spinlab_chain* chain, const char* path) {
  return guarded([&] {
    need(chain != nullptr, "chain");
    need(path != nullptr, "path");
    spinlab::save_samples(chain->rep, path);
  });
}

spinlab_status spinlab_estimate_correlation(const spinlab_chain* chain, int x, int y,
                                            double* out_mean, double* out_stderr,
                                            size_t* out_samples) {
  return guarded([&] {
    need(chain != nullptr, "chain");
    need(out_mean != nullptr, "out_mean");
    need(out_stderr != nullptr, "out_stderr");
    const spinlab::Estimate est = spinlab::estimate_correlation(chain->rep, x, y);
    *out_mean = est.mean;
    *out_stderr = est.stderror;
    if (out_samples) *out_samples = est.n_samples;
  });
}

spinlab_status spinlab_estimate_rescaled_distance(const spinlab_chain* chain, double beta, int x,
                                                  int y, double* out_mean, double* out_stderr,
                                                  size_t* out_samples) {
  return guarded([&] {
    need(chain != nullptr, "chain");
    need(out_mean != nullptr, "out_mean");
    need(out_stderr != nullptr, "out_stderr");
    const spinlab::Estimate est = spinlab::estimate_rescaled_distance(chain->rep, beta, x, y);
    *out_mean = est.mean;
    *out_stderr = est.stderror;
    if (out_samples) *out_samples = est.n_samples;
  });
}

spinlab_status spinlab_estimate_k_matrix(const spinlab_chain* chain, double* out_values,
                                         double* out_stderr) {
  return guarded([&] {
    need(chain != nullptr, "chain");
    need(out_values != nullptr, "out_values");
    need(out_stderr != nullptr, "out_stderr");
    const spinlab::KMatrixEstimate est = spinlab::estimate_k_matrix(chain->rep);
    copy_matrix(est.value, out_values);
    copy_matrix(est.stderror, out_stderr);
  });
}

/* ---- Gaussian-domination analysis ------------------------------------ */

spinlab_status spinlab_gd_exact(const spinlab_graph* g, double beta, spinlab_gd_report** out) {
  return guarded([&] {
    need(g != nullptr, "graph");
    need(out != nullptr, "out");
    *out = new spinlab_gd_report{spinlab::gd_verdict(spinlab::hessian_from_exact(g->rep, beta))};
  });
}

spinlab_status spinlab_gd_from_chain(const spinlab_chain* chain, spinlab_gd_report** out) {
  return guarded([&] {
    need(chain != nullptr, "chain");
    need(out != nullptr, "out");
    *out = new spinlab_gd_report{spinlab::gd_verdict(spinlab::hessian_from_chain(chain->rep))};
  });
}

void spinlab_gd_report_free(spinlab_gd_report* report) { delete report; }

int spinlab_gd_verdict(const spinlab_gd_report* report) {
  return report ? static_cast<int>(report->rep.verdict) : SPINLAB_VERDICT_INCONCLUSIVE;
}

const char* spinlab_gd_verdict_name(const spinlab_gd_report* report) {
  return report ? spinlab::verdict_name(report->rep.verdict) : "Inconclusive";
}

int spinlab_gd_method(const spinlab_gd_report* report) {
  return report ? static_cast<int>(report->rep.method) : SPINLAB_METHOD_EXACT;
}

double spinlab_gd_lambda_max(const spinlab_gd_report* report) {
  return report ? report->rep.lambda_max : 0.0;
}

double spinlab_gd_lambda_ci(const spinlab_gd_report* report) {
  return report ? report->rep.lambda_ci : 0.0;
}

double spinlab_gd_beta(const spinlab_gd_report* report) {
  return report ? report->rep.beta : 0.0;
}

int spinlab_gd_size(const spinlab_gd_report* report) { return report ? report->rep.n : 0; }

spinlab_status spinlab_gd_worst_direction(const spinlab_gd_report* report, double* out) {
  return guarded([&] {
    need(report != nullptr, "report");
    need(out != nullptr, "out");
    const Eigen::VectorXd& v = report->rep.worst_direction;
    for (Eigen::Index r = 0; r < v.size(); ++r) out[r] = v(r);
  });
}

spinlab_status spinlab_gde_lower_bound(const spinlab_graph* g, double beta, int n_components,
                                       int x, int y, double* out) {
  return guarded([&] {
    need(g != nullptr, "graph");
    need(out != nullptr, "out");
    *out = spinlab::gde_lower_bound(g->rep, beta, n_components, x, y);
  });
}

spinlab_status spinlab_high_temp_threshold(const spinlab_graph* g, double* out) {
  return guarded([&] {
    need(g != nullptr, "graph");
    need(out != nullptr, "out");
    *out = spinlab::high_temp_threshold(g->rep);
  });
}

spinlab_status spinlab_audit_gde(const spinlab_graph* g, double beta, int n_components,
                                 const spinlab_gd_report* report, const double* corr,
                                 const double* corr_stderr, double* rows, int* asserted,
                                 int* all_pass) {
  return guarded([&] {
    need(g != nullptr, "graph");
    need(report != nullptr, "report");
    need(corr != nullptr, "corr");
    need(rows != nullptr, "rows");
    const int n = g->rep.n();
    Eigen::MatrixXd correlations(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) correlations(r, c) = corr[r * n + c];
    Eigen::MatrixXd noise;
    if (corr_stderr != nullptr) {
      noise.resize(n, n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) noise(r, c) = corr_stderr[r * n + c];
    }
    const spinlab::AuditTable table =
        spinlab::audit_gde(g->rep, beta, n_components, report->rep, correlations,
                           corr_stderr ? &noise : nullptr);
    size_t at = 0;
    for (const spinlab::AuditRow& row : table.rows) {
      rows[at++] = row.x;
      rows[at++] = row.y;
      rows[at++] = row.correlation;
      rows[at++] = row.bound;
      rows[at++] = row.margin;
    }
    if (asserted) *asserted = table.asserted ? 1 : 0;
    if (all_pass) *all_pass = table.all_pass ? 1 : 0;
  });
}

/* ---- Gaussian free field -------------------------------------------- */

spinlab_status spinlab_gff_covariance(const spinlab_graph* g, int root, double* out) {
  return guarded([&] {
    need(g != nullptr, "graph");
    need(out != nullptr, "out");
    const spinlab::GFFCovariance cov = spinlab::gff_covariance(g->rep, root);
    const int n = g->rep.n();
    for (int x = 1; x <= n; ++x)
      for (int y = 1; y <= n; ++y) out[(x - 1) * n + (y - 1)] = cov.entry(x, y);
  });
}

spinlab_status spinlab_gff_sample(const spinlab_graph* g, int components, int root, size_t count,
                                  uint64_t seed, uint64_t stream, double* out) {
  return guarded([&] {
    need(g != nullptr, "graph");
    need(out != nullptr, "out");
    const spinlab::GFFSampleSet set =
        spinlab::gff_sample(g->rep, components, root, count, seed, stream);
    const size_t width = static_cast<size_t>(set.n) * static_cast<size_t>(set.components);
    for (size_t s = 0; s < set.count(); ++s)
      std::memcpy(out + s * width, set.fields[s].data(), width * sizeof(double));
  });
}

spinlab_status spinlab_wcon(const spinlab_graph* g, int n_components, const double* betas,
                            size_t n_betas, int x, int y, const spinlab_chain_config* cfg,
                            size_t gff_count, double* rows) {
  return guarded([&] {
    need(g != nullptr, "graph");
    need(betas != nullptr, "betas");
    need(rows != nullptr, "rows");
    const std::vector<double> schedule(betas, betas + n_betas);
    const std::vector<spinlab::WconRow> report =
        spinlab::wcon_report(g->rep, n_components, schedule, x, y, config_from(cfg), gff_count);
    size_t at = 0;
    for (const spinlab::WconRow& row : report) {
      rows[at++] = row.beta;
      rows[at++] = row.moment.mean;
      rows[at++] = row.moment.stderror;
      rows[at++] = row.moment_target;
      rows[at++] = row.ks;
    }
  });
}

}  // extern "C"
