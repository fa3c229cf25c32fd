// Acceptance gate for the repository: twelve self-contained checks, one line
// of output each. Every tolerance and runtime budget is pinned here. The
// optional first argument is the path to the spinlab CLI binary; the
// reproducibility check needs it and fails when it is missing.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "closed_forms.hpp"
#include "enumerate.hpp"
#include "gd.hpp"
#include "gff.hpp"
#include "graph.hpp"
#include "greens.hpp"
#include "mc.hpp"
#include "star.hpp"
#include "support.hpp"

using namespace spinlab;

namespace {

std::string g_cli;

using Problems = std::vector<std::string>;

void expect(Problems& problems, bool ok, const std::string& message) {
  if (!ok) problems.push_back(message);
}

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

std::vector<int> bfs_distances(const Graph& g, int from) {
  std::vector<int> dist(static_cast<size_t>(g.n()) + 1, -1);
  std::deque<int> queue{from};
  dist[static_cast<size_t>(from)] = 0;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w : g.neighbors(v))
      if (dist[static_cast<size_t>(w)] < 0) {
        dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(v)] + 1;
        queue.push_back(w);
      }
  }
  return dist;
}

// Dominated instances gathered by criteria 5 and 6, audited by criterion 7.
struct DominatedInstance {
  Graph graph;
  double beta;
  GDReport report;
};
std::vector<DominatedInstance> g_dominated;

/* ---- criterion bodies ------------------------------------------------ */

void crit_greens_exactness(Problems& problems) {
  for (int l : {2, 3, 5}) {
    const Graph g = parallel_paths(l, l);
    const int y = l * l + 2;
    const double u = greens_function(g, 1, y).at(1);
    const double renorm = renormalized_green(g, 1, y);
    expect(problems, std::abs(u - (l + 1)) <= 1e-10,
           "paths(" + std::to_string(l) + "," + std::to_string(l) + "): u = " +
               std::to_string(u) + ", expected " + std::to_string(l + 1));
    expect(problems, std::abs(renorm - double(l + 1) / l) <= 1e-10,
           "paths(" + std::to_string(l) + "," + std::to_string(l) + "): renormalized " +
               std::to_string(renorm));
  }
}

void crit_closed_forms_vs_enumeration(Problems& problems) {
  const Graph tree = perfect_binary_tree(3);
  for (double beta : {0.3, 1.0, 2.0}) {
    const Eigen::MatrixXd corr = exact_correlation_matrix(tree, beta);
    for (int x = 1; x <= tree.n(); ++x) {
      const std::vector<int> dist = bfs_distances(tree, x);
      for (int y = x + 1; y <= tree.n(); ++y) {
        const double closed =
            tree_correlation_closed_form(beta, dist[static_cast<size_t>(y)]);
        if (std::abs(closed - corr(x - 1, y - 1)) > 1e-12)
          problems.push_back("tree(3) beta=" + std::to_string(beta) + " pair (" +
                             std::to_string(x) + "," + std::to_string(y) + ") off by " +
                             std::to_string(std::abs(closed - corr(x - 1, y - 1))));
      }
    }
  }
  for (int l : {2, 3}) {
    const Graph g = parallel_paths(l, l);
    const int y = l * l + 2;
    for (double beta : {0.3, 1.0, 2.0}) {
      const double closed = parallel_paths_correlation_closed_form(beta, l, l);
      const double exact = exact_correlation(g, beta, 1, y);
      if (std::abs(closed - exact) > 1e-12)
        problems.push_back("paths(" + std::to_string(l) + "," + std::to_string(l) +
                           ") beta=" + std::to_string(beta) + " off by " +
                           std::to_string(std::abs(closed - exact)));
    }
  }
}

void crit_star_counterexample(Problems& problems) {
  const int minimal = minimal_star_size(1.0, 1);
  expect(problems, minimal == 11, "minimal_star_size(1,1) = " + std::to_string(minimal));

  for (int n0 : {10, 11}) {
    const Graph g = star_graph(n0);
    std::vector<double> center(static_cast<size_t>(g.n()), 0.0);
    center[0] = 1.0;
    const double d2 = directional_second_derivative(g, 1.0, center, IsingConvention::Unit);
    const int want = n0 == 11 ? 1 : -1;
    expect(problems, sign_of(d2) == want,
           "star(" + std::to_string(n0) + ") second derivative " + std::to_string(d2));
  }
}

void crit_tree_counterexample(Problems& problems) {
  const Graph g = perfect_binary_tree(4);
  std::vector<double> leaves(static_cast<size_t>(g.n()), 0.0);
  for (int v = 8; v <= 15; ++v) leaves[static_cast<size_t>(v - 1)] = 1.0;
  for (double beta : {0.1, 0.5, 0.9, 1.2, 2.0}) {
    const double closed = binary_tree_hessian_closed_form(beta, 4);
    const double enumerated =
        directional_second_derivative(g, beta, leaves, IsingConvention::Unit);
    if (sign_of(closed) != sign_of(enumerated))
      problems.push_back("depth 4, beta=" + std::to_string(beta) + ": closed form " +
                         std::to_string(closed) + " vs enumeration " +
                         std::to_string(enumerated));
  }
  const double threshold = binary_tree_divergence_threshold();
  expect(problems, std::abs(threshold - std::atanh(1.0 / std::sqrt(2.0))) <= 1e-6,
         "threshold " + std::to_string(threshold));
}

void crit_high_temp(Problems& problems) {
  Rng rng(4242);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = testing::random_connected_graph(rng, 12);
    const double beta = 1.0 / (16.0 * g.m());
    GDReport report = gd_verdict(hessian_from_exact(g, beta));
    if (report.verdict != Verdict::Dominated)
      problems.push_back("trial " + std::to_string(trial) + " (" + g.spec() +
                         ", beta=" + std::to_string(beta) +
                         "): " + verdict_name(report.verdict));
    else
      g_dominated.push_back({g, beta, std::move(report)});
  }
}

void crit_low_temp_scan(Problems& problems) {
  const std::vector<Graph> graphs = {complete_graph(2), path_graph(4), cycle_graph(5),
                                     perfect_binary_tree(3)};
  for (const Graph& g : graphs) {
    bool found = false;
    for (double beta : {1.0, 5.0, 25.0, 100.0, 200.0}) {
      GDReport cold = gd_verdict(hessian_from_exact(g, beta));
      if (cold.verdict != Verdict::Dominated) continue;
      GDReport colder = gd_verdict(hessian_from_exact(g, 2.0 * beta));
      if (colder.verdict != Verdict::Dominated) continue;
      g_dominated.push_back({g, beta, std::move(cold)});
      g_dominated.push_back({g, 2.0 * beta, std::move(colder)});
      found = true;
      break;
    }
    expect(problems, found, g.spec() + ": no dominated beta found up to 200");
  }
}

void crit_gde_audit(Problems& problems) {
  expect(problems, !g_dominated.empty(), "no dominated instances were collected");
  for (const DominatedInstance& inst : g_dominated) {
    const Eigen::MatrixXd corr = exact_correlation_matrix(inst.graph, inst.beta);
    const AuditTable table = audit_gde(inst.graph, inst.beta, 1, inst.report, corr, nullptr);
    if (!table.asserted || !table.all_pass) {
      for (const AuditRow& row : table.rows)
        if (!row.pass)
          problems.push_back(inst.graph.spec() + " beta=" + std::to_string(inst.beta) +
                             " pair (" + std::to_string(row.x) + "," + std::to_string(row.y) +
                             ") margin " + std::to_string(row.margin));
      if (!table.asserted) problems.push_back(inst.graph.spec() + ": audit not asserted");
    }
  }
}

void crit_k_matrix_limit(Problems& problems) {
  const Graph g = cycle_graph(6);
  ChainConfig cfg;
  cfg.sweeps = 1100000;
  cfg.burn_in = 100000;
  cfg.thin = 1;
  cfg.seed = 813;
  const ChainSamples chain = run_chain(g, 3, 50.0, cfg);
  const KMatrixEstimate est = estimate_k_matrix(chain);
  const Eigen::MatrixXd target = (2.0 / 3.0) * laplacian_matrix(g);
  for (int r = 0; r < g.n(); ++r)
    for (int c = 0; c < g.n(); ++c) {
      const double deviation = std::abs(est.value(r, c) - target(r, c));
      const double band = std::max(4.0 * est.stderror(r, c), 0.05);
      if (deviation > band)
        problems.push_back("entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) +
                           "): deviation " + std::to_string(deviation) + " > band " +
                           std::to_string(band));
    }
}

void crit_gff_convergence(Problems& problems) {
  const std::vector<double> schedule = {10.0, 50.0, 200.0};
  ChainConfig cfg;
  cfg.sweeps = 200000;
  cfg.burn_in = 20000;
  cfg.thin = 10;
  cfg.seed = 91;
  const std::vector<Graph> graphs = {complete_graph(2), path_graph(3)};
  for (const Graph& g : graphs) {
    for (int n_components : {2, 3}) {
      const std::string label = g.spec() + " N=" + std::to_string(n_components);
      const std::vector<WconRow> rows =
          wcon_report(g, n_components, schedule, g.n(), 1, cfg, 20000);
      const WconRow& final_row = rows.back();
      expect(problems, final_row.moment.n_samples >= 10000,
             label + ": only " + std::to_string(final_row.moment.n_samples) + " samples");
      const double final_gap = std::abs(final_row.moment.mean - final_row.moment_target);
      expect(problems, final_gap < 0.10 * final_row.moment_target,
             label + ": final gap " + std::to_string(final_gap) + " vs target " +
                 std::to_string(final_row.moment_target));
      expect(problems, final_row.ks < 0.05,
             label + ": ks " + std::to_string(final_row.ks) + " at beta 200");
      for (size_t i = 0; i + 1 < rows.size(); ++i) {
        const double gap_i = std::abs(rows[i].moment.mean - rows[i].moment_target);
        const double gap_next = std::abs(rows[i + 1].moment.mean - rows[i + 1].moment_target);
        const double slack = 4.0 * (rows[i].moment.stderror + rows[i + 1].moment.stderror);
        if (gap_next > gap_i + slack)
          problems.push_back(label + ": gap grew from " + std::to_string(gap_i) + " to " +
                             std::to_string(gap_next) + " (slack " + std::to_string(slack) +
                             ")");
      }
    }
  }
}

void crit_three_point_identity(Problems& problems) {
  Rng rng(2718);
  long checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = testing::random_connected_graph(rng, 15);
    const int n = g.n();
    // greens table for every ordered pair; [x][z] with 1-based indices
    std::vector<std::vector<GreenTable>> table(static_cast<size_t>(n) + 1);
    for (int x = 1; x <= n; ++x) {
      table[static_cast<size_t>(x)].reserve(static_cast<size_t>(n));
      for (int z = 1; z <= n; ++z)
        table[static_cast<size_t>(x)].push_back(
            x == z ? GreenTable{} : greens_function(g, x, z));
    }
    auto at = [&](int i, int j, int s) -> double {
      return table[static_cast<size_t>(i)][static_cast<size_t>(j - 1)].at(s);
    };
    for (int x = 1; x <= n; ++x)
      for (int y = 1; y <= n; ++y) {
        if (y == x) continue;
        for (int z = 1; z <= n; ++z) {
          if (z == x || z == y) continue;
          const double lhs = at(x, y, x) / g.degree(x);
          const double rhs = at(x, z, x) / g.degree(x) + at(y, z, y) / g.degree(y) -
                             2.0 * at(x, z, y) / g.degree(x);
          ++checked;
          if (std::abs(lhs - rhs) > 1e-10 * (1.0 + std::max(std::abs(lhs), std::abs(rhs)))) {
            problems.push_back(g.spec() + " triple (" + std::to_string(x) + "," +
                               std::to_string(y) + "," + std::to_string(z) + "): lhs " +
                               std::to_string(lhs) + " rhs " + std::to_string(rhs));
            if (problems.size() > 5) return;
          }
        }
      }
  }
  expect(problems, checked > 0, "no triples enumerated");
}

void crit_torus(Problems& problems) {
  const Graph g = torus_graph(4, 2);
  for (double beta : {0.2, 1.0, 5.0}) {
    const GDReport report = gd_verdict(hessian_from_exact(g, beta));
    if (report.verdict != Verdict::Dominated)
      problems.push_back("beta=" + std::to_string(beta) + ": " +
                         verdict_name(report.verdict) + " (lambda_max " +
                         std::to_string(report.lambda_max) + ")");
  }
}

std::string capture(const std::string& args, int* code) {
  static int counter = 0;
  const std::string path =
      (std::filesystem::temp_directory_path() /
       ("acceptance_" + std::to_string(::getpid()) + "_" + std::to_string(counter++)))
          .string();
  const std::string cmd = g_cli + " " + args + " >" + path + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  *code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::remove(path.c_str());
  return buf.str();
}

void crit_reproducibility(Problems& problems) {
  if (g_cli.empty()) {
    problems.push_back("no CLI binary path given on the command line");
    return;
  }
  const std::vector<std::string> commands = {
      "--threads 1 mc cycle:5 --N 3 --beta 2 --seed 19 --sweeps 6000 --burn-in 1000"
      " --x 1 --y 3 --k-matrix",
      "--threads 1 gd-check path:4 --N 2 --beta 0.5 --method mc --seed 23 --sweeps 6000",
      "--threads 1 gff-compare complete:2 --N 2 --betas 10 50 --x 2 --y 1 --seed 11"
      " --sweeps 12000 --burn-in 2000 --thin 5 --gff-samples 5000",
      "--threads 1 greens complete:2 1 2 --oracle --seed 5 --trials 4000",
  };
  for (const std::string& command : commands) {
    int code_a = -1, code_b = -1;
    const std::string first = capture(command, &code_a);
    const std::string second = capture(command, &code_b);
    expect(problems, !first.empty(), "no output from: " + command);
    expect(problems, code_a == code_b,
           "exit codes differ (" + std::to_string(code_a) + " vs " + std::to_string(code_b) +
               "): " + command);
    expect(problems, first == second, "outputs differ across reruns: " + command);
  }
}

/* ---- runner ---------------------------------------------------------- */

struct Criterion {
  int id;
  const char* title;
  double budget_seconds;  // 0 means no pinned budget
  std::function<void(Problems&)> body;
};

int run_all() {
  const std::vector<Criterion> criteria = {
      {1, "Green's function exactness on parallel paths (tol 1e-10)", 1.0,
       crit_greens_exactness},
      {2, "closed forms match enumeration (tol 1e-12)", 10.0, crit_closed_forms_vs_enumeration},
      {3, "star counterexample: minimal size 11, sign flip", 5.0, crit_star_counterexample},
      {4, "binary-tree counterexample: signs and threshold (1e-6)", 30.0,
       crit_tree_counterexample},
      {5, "high-temperature domination on 50 random graphs", 120.0, crit_high_temp},
      {6, "low-temperature domination scan on four graphs", 120.0, crit_low_temp_scan},
      {7, "correlation audit on every dominated instance (tol 1e-9)", 0.0, crit_gde_audit},
      {8, "K matrix near (2/3)L on cycle(6), N=3, beta=50", 300.0, crit_k_matrix_limit},
      {9, "chains approach the pinned field along the beta schedule", 600.0,
       crit_gff_convergence},
      {10, "three-point identity on all triples of 20 random graphs (tol 1e-10)", 30.0,
       crit_three_point_identity},
      {11, "torus(4,2) dominated at beta in {0.2, 1, 5}", 60.0, crit_torus},
      {12, "stochastic CLI reruns are byte-identical", 0.0, crit_reproducibility},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    Problems problems;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.body(problems);
    } catch (const std::exception& e) {
      problems.push_back(std::string("exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criterion.budget_seconds > 0.0 && elapsed > criterion.budget_seconds)
      problems.push_back("runtime " + std::to_string(elapsed) + " s exceeds budget " +
                         std::to_string(criterion.budget_seconds) + " s");

    if (problems.empty()) {
      std::printf("[PASS] %2d. %s (%.2f s)\n", criterion.id, criterion.title, elapsed);
    } else {
      ++failures;
      std::printf("[FAIL] %2d. %s (%.2f s)\n", criterion.id, criterion.title, elapsed);
      const size_t shown = problems.size() < 4 ? problems.size() : 4;
      for (size_t i = 0; i < shown; ++i)
        std::printf("         - %s\n", problems[i].c_str());
      if (problems.size() > shown)
        std::printf("         - ... and %zu more\n", problems.size() - shown);
    }
    std::fflush(stdout);
  }
  std::printf("%d of 12 criteria passed\n", 12 - failures);
  return failures;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli = argv[1];
  return run_all();
}
