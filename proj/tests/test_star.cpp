#include <doctest.h>

#include <cmath>

#include "enumerate.hpp"
#include "graph.hpp"
#include "star.hpp"

using namespace spinlab;

namespace {

double center_second_derivative(double beta, int n0) {
  const Graph star = star_graph(n0);
  std::vector<double> v(star.n(), 0.0);
  v[0] = 1.0;
  return directional_second_derivative(star, beta, v, IsingConvention::Unit);
}

}  // namespace

TEST_SUITE_BEGIN("star");

TEST_CASE("gauss-legendre rule") {
  std::vector<double> x, w;
  gauss_legendre(16, 0.0, 3.141592653589793, &x, &w);
  double integral_sin = 0.0, total_weight = 0.0;
  for (int i = 0; i < 16; ++i) {
    integral_sin += w[i] * std::sin(x[i]);
    total_weight += w[i];
  }
  CHECK(integral_sin == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(total_weight == doctest::Approx(3.141592653589793).epsilon(1e-13));

  // exact for polynomials of degree <= 2n-1
  gauss_legendre(4, -1.0, 1.0, &x, &w);
  for (int power : {0, 2, 4, 6}) {
    double moment = 0.0;
    for (int i = 0; i < 4; ++i) moment += w[i] * std::pow(x[i], power);
    CHECK(moment == doctest::Approx(2.0 / (power + 1)).epsilon(1e-13));
  }
  double odd = 0.0;
  for (int i = 0; i < 4; ++i) odd += w[i] * std::pow(x[i], 3);
  CHECK(odd == doctest::Approx(0.0).epsilon(1e-14));

  CHECK_THROWS_AS(gauss_legendre(1, 0.0, 1.0, &x, &w), Error);
}

TEST_CASE("ising closed sums") {
  for (double beta : {0.5, 1.0, 2.0}) {
    const double e2 = std::exp(-2.0 * beta);
    for (int n0 : {2, 5, 10, 11}) {
      const double direct = (n0 - 1) * 8.0 * beta * beta * e2 * e2 +
                            (1.0 + e2) * 2.0 * (-beta + (4.0 * beta * beta - beta) * e2);
      CHECK(star_hessian(beta, 1, n0) == doctest::Approx(direct).epsilon(1e-13));
    }
  }
}

TEST_CASE("enumeration identity") {
  // the full second derivative factorizes through the per-leaf integral:
  // d2 on star(n0) along the center direction = n0 C^{n0-2} star_hessian
  for (double beta : {0.5, 1.0, 2.0}) {
    const double c = 1.0 + std::exp(-2.0 * beta);
    for (int n0 : {2, 3, 5, 10, 11}) {
      const double predicted = n0 * std::pow(c, n0 - 2) * star_hessian(beta, 1, n0);
      CHECK(center_second_derivative(beta, n0) == doctest::Approx(predicted).epsilon(1e-12));
    }
  }
}

TEST_CASE("sign flip at eleven leaves") {
  CHECK(star_hessian(1.0, 1, 10) < 0.0);
  CHECK(star_hessian(1.0, 1, 11) > 0.0);
  CHECK(minimal_star_size(1.0, 1) == 11);
  CHECK(center_second_derivative(1.0, 10) < 0.0);
  CHECK(center_second_derivative(1.0, 11) > 0.0);

  // signs agree with enumeration across the small-star sweep
  for (double beta : {0.5, 1.0, 2.0}) {
    for (int n0 = 2; n0 <= 12; ++n0) {
      const double closed = star_hessian(beta, 1, n0);
      const double enumerated = center_second_derivative(beta, n0);
      CHECK(closed * enumerated > 0.0);
    }
  }
}

TEST_CASE("minimal size properties") {
  // a segment never violates, for any component count
  for (int n : {1, 2, 3}) CHECK(star_hessian(1.0, n, 2) < 0.0);

  for (int n : {1, 2, 3}) {
    for (double beta : {0.7, 1.0, 2.0}) {
      const int n0 = minimal_star_size(beta, n);
      CHECK(star_hessian(beta, n, n0) > 0.0);
      if (n0 > 2) CHECK(star_hessian(beta, n, n0 - 1) <= 0.0);
    }
  }

  CHECK(minimal_star_size(1.0, 2) == 4);
  CHECK(minimal_star_size(1.0, 3) == 5);

  // N=1: the positive slope decays like beta^2 e^{-4 beta}, so the answer
  // blows up as the temperature drops
  const int at1 = minimal_star_size(1.0, 1);
  const int at2 = minimal_star_size(2.0, 1);
  const int at3 = minimal_star_size(3.0, 1);
  CHECK(at1 < at2);
  CHECK(at2 < at3);
  CHECK(at3 > 10000);

  CHECK_THROWS_AS(minimal_star_size(0.0, 1), Error);
  CHECK_THROWS_AS(minimal_star_size(1.0, 4), Error);
  CHECK_THROWS_AS(star_hessian(1.0, 0, 5), Error);
  CHECK_THROWS_AS(star_hessian(1.0, 1, 1), Error);
}

TEST_CASE("quadrature stability") {
  for (int n : {2, 3}) {
    for (double beta : {0.5, 1.0, 3.0}) {
      const double coarse = star_hessian(beta, n, 6, 128);
      const double fine = star_hessian(beta, n, 6, 256);
      CHECK(std::abs(coarse - fine) < 1e-8);
    }
    // affine in n0: second difference vanishes
    const double h3 = star_hessian(1.0, n, 3);
    const double h4 = star_hessian(1.0, n, 4);
    const double h5 = star_hessian(1.0, n, 5);
    CHECK(h5 - 2.0 * h4 + h3 == doctest::Approx(0.0).epsilon(1e-9));
  }
}

TEST_SUITE_END();
