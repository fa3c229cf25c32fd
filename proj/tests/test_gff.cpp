#include <doctest.h>

#include <cmath>

#include "gff.hpp"
#include "graph.hpp"
#include "greens.hpp"
#include "support.hpp"

using namespace spinlab;

TEST_SUITE_BEGIN("gff");

TEST_CASE("covariance equals the pinned walk quantities") {
  const Graph k2 = from_edge_list({{1, 2}});
  const GFFCovariance cov_k2 = gff_covariance(k2, 1);
  CHECK(cov_k2.entry(2, 2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cov_k2.entry(1, 1) == 0.0);
  CHECK(cov_k2.entry(1, 2) == 0.0);

  const GFFCovariance cov_p3 = gff_covariance(path_graph(3), 1);
  CHECK(cov_p3.entry(3, 3) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(cov_p3.distance_variance(3, 1) == doctest::Approx(2.0).epsilon(1e-10));

  Rng rng(83);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = testing::random_connected_graph(rng, 14);
    const int root = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(g.n())));
    const GFFCovariance cov = gff_covariance(g, root);
    for (int v = 1; v <= g.n(); ++v) {
      if (v == root) continue;
      CHECK(cov.entry(v, v) == doctest::Approx(renormalized_green(g, v, root)).epsilon(1e-10));
    }
    // pairwise distance variance via the three-point combination
    if (g.n() >= 3) {
      int x = root, y = root;
      while (x == root) x = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(g.n())));
      while (y == root || y == x) y = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(g.n())));
      const double expected = renormalized_green(g, x, root) + renormalized_green(g, y, root) -
                              2.0 * greens_function(g, x, root).at(y) / g.degree(x);
      CHECK(cov.distance_variance(x, y) == doctest::Approx(expected).epsilon(1e-10));
    }
  }
}

TEST_CASE("field samples") {
  const Graph p3 = path_graph(3);
  const GFFSampleSet set = gff_sample(p3, 2, 1, 100000, 99);
  REQUIRE(set.count() == 100000);
  CHECK(set.root == 1);

  const GFFCovariance cov = gff_covariance(p3, 1);
  for (std::size_t t = 0; t < 100; ++t) {
    CHECK(set.value(t, 1, 0) == 0.0);  // root pinned in every sample
    CHECK(set.value(t, 1, 1) == 0.0);
  }

  double var3 = 0.0, cross = 0.0, var2 = 0.0;
  for (std::size_t t = 0; t < set.count(); ++t) {
    var3 += set.value(t, 3, 0) * set.value(t, 3, 0);
    var2 += set.value(t, 2, 0) * set.value(t, 2, 0);
    cross += set.value(t, 3, 0) * set.value(t, 3, 1);
  }
  var3 /= set.count();
  var2 /= set.count();
  cross /= set.count();
  CHECK(var3 == doctest::Approx(cov.entry(3, 3)).epsilon(0.05));
  CHECK(var2 == doctest::Approx(cov.entry(2, 2)).epsilon(0.05));
  // independent components: cross moment is mean of products of two
  // independent variables with variances 2 each, se ~ sqrt(4/T)
  CHECK(std::abs(cross) < 4.0 * std::sqrt(4.0 / set.count()));

  // deterministic per (seed, stream)
  const GFFSampleSet again = gff_sample(p3, 2, 1, 50, 99);
  const GFFSampleSet other = gff_sample(p3, 2, 1, 50, 99, 1);
  CHECK(again.fields[0] == set.fields[0]);
  CHECK(other.fields[0] != set.fields[0]);
}

TEST_CASE("low-temperature comparison rows") {
  const Graph k2 = from_edge_list({{1, 2}});
  ChainConfig cfg;
  cfg.sweeps = 200000;
  cfg.burn_in = 20000;
  cfg.thin = 10;
  cfg.seed = 414;

  const std::vector<WconRow> rows = wcon_report(k2, 2, {10.0, 200.0}, 2, 1, cfg, 20000);
  REQUIRE(rows.size() == 2);
  for (const auto& row : rows) {
    CHECK(row.moment_target == doctest::Approx(1.0).epsilon(1e-10));  // (N-1) * Var = 1
    CHECK(row.moment.n_samples > 10000);
    CHECK(row.ks < 0.05);
  }
  const double final_gap = std::abs(rows[1].moment.mean - rows[1].moment_target);
  CHECK(final_gap < 0.1 * rows[1].moment_target);
  // gap must not grow beyond statistical slack
  const double first_gap = std::abs(rows[0].moment.mean - rows[0].moment_target);
  CHECK(final_gap <= first_gap + 4.0 * (rows[0].moment.stderror + rows[1].moment.stderror));

  // reruns with the same seed are identical
  const std::vector<WconRow> rerun = wcon_report(k2, 2, {10.0, 200.0}, 2, 1, cfg, 20000);
  CHECK(rerun[0].moment.mean == rows[0].moment.mean);
  CHECK(rerun[1].ks == rows[1].ks);

  CHECK_THROWS_AS(wcon_report(k2, 1, {10.0}, 2, 1, cfg, 100), Error);        // needs N >= 2
  CHECK_THROWS_AS(wcon_report(k2, 2, {10.0, 5.0}, 2, 1, cfg, 100), Error);   // not increasing
  CHECK_THROWS_AS(wcon_report(k2, 2, {}, 2, 1, cfg, 100), Error);            // empty schedule
  CHECK_THROWS_AS(wcon_report(k2, 2, {10.0}, 1, 2, cfg, 100), Error);        // x is the root
  CHECK_THROWS_AS(wcon_report(k2, 2, {10.0}, 2, 2, cfg, 100), Error);        // x == y
}

TEST_SUITE_END();
