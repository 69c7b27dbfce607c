// SPDX-License-Identifier: Apache-2.0
// Basis, quadrature, and projection oracles.  Frozen values are derived
// independently (closed forms or hand reduction), not read back from the
// implementation.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "fracldg/basis.hpp"
#include "fracldg/grid_function.hpp"

using namespace fracldg;

TEST_CASE("legendre point values") {
  CHECK(legendre(0, 0.3) == doctest::Approx(1.0));
  CHECK(legendre(1, 0.3) == doctest::Approx(0.3));
  CHECK(legendre(2, 0.3) == doctest::Approx(0.5 * (3 * 0.09 - 1.0)));
  CHECK(legendre(4, 0.0) == doctest::Approx(0.375));  // 3/8
  for (int n = 0; n <= 6; ++n) {
    CHECK(legendre(n, 1.0) == doctest::Approx(1.0));
    CHECK(legendre(n, -1.0) == doctest::Approx(n % 2 ? -1.0 : 1.0));
  }
}

TEST_CASE("legendre derivative: recurrence vs finite difference and endpoints") {
  for (int n = 1; n <= 6; ++n) {
    for (double x : {-0.77, -0.2, 0.0, 0.41, 0.9}) {
      const double fd = (legendre(n, x + 1e-6) - legendre(n, x - 1e-6)) / 2e-6;
      CHECK(legendre_deriv(n, x) == doctest::Approx(fd).epsilon(1e-6));
    }
    const double end = n * (n + 1) / 2.0;
    CHECK(legendre_deriv(n, 1.0) == doctest::Approx(end));
    CHECK(legendre_deriv(n, -1.0) ==
          doctest::Approx(end * (n % 2 ? 1.0 : -1.0)));
  }
}

TEST_CASE("row fills match single evaluations") {
  std::vector<double> p(7), dp(7);
  legendre_row(6, 0.37, p.data());
  legendre_deriv_row(6, 0.37, dp.data());
  for (int n = 0; n <= 6; ++n) {
    CHECK(p[n] == doctest::Approx(legendre(n, 0.37)).epsilon(1e-14));
    CHECK(dp[n] == doctest::Approx(legendre_deriv(n, 0.37)).epsilon(1e-13));
  }
}

TEST_CASE("legendre_eval checks its arguments") {
  CHECK(legendre_eval(3, 0.5, 0) == doctest::Approx(legendre(3, 0.5)));
  CHECK(legendre_eval(3, 0.5, 1) == doctest::Approx(legendre_deriv(3, 0.5)));
  CHECK_THROWS(legendre_eval(-1, 0.5, 0));
  CHECK_THROWS(legendre_eval(3, 0.5, 2));
  CHECK_THROWS(legendre_eval(3, 1.5, 0));
}

TEST_CASE("gauss rules: frozen nodes, exactness, weight sum") {
  const QuadRule q2 = gauss_rule(2);
  CHECK(q2.nodes[0] == doctest::Approx(-0.5773502691896258).epsilon(1e-14));
  CHECK(q2.nodes[1] == doctest::Approx(0.5773502691896258).epsilon(1e-14));

  // q = 3 integrates x^4 to 2/5.
  const QuadRule q3 = gauss_rule(3);
  double s = 0.0;
  for (int i = 0; i < 3; ++i) s += q3.weights[i] * std::pow(q3.nodes[i], 4);
  CHECK(s == doctest::Approx(0.4).epsilon(1e-13));

  for (int q = 1; q <= 20; ++q) {
    const QuadRule r = gauss_rule(q);
    double wsum = 0.0;
    for (double w : r.weights) wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-13));
  }

  // Exact through degree 2q-1: q = 5 on x^8 -> 2/9, on x^9 -> 0.
  const QuadRule q5 = gauss_rule(5);
  double s8 = 0.0, s9 = 0.0;
  for (int i = 0; i < 5; ++i) {
    s8 += q5.weights[i] * std::pow(q5.nodes[i], 8);
    s9 += q5.weights[i] * std::pow(q5.nodes[i], 9);
  }
  CHECK(s8 == doctest::Approx(2.0 / 9.0).epsilon(1e-13));
  CHECK(std::abs(s9) < 1e-14);
}

TEST_CASE("orthogonality of the modal basis") {
  const QuadRule q = gauss_rule(8);
  for (int i = 0; i <= 5; ++i)
    for (int j = 0; j <= 5; ++j) {
      double s = 0.0;
      for (int g = 0; g < q.size(); ++g)
        s += q.weights[g] * legendre(i, q.nodes[g]) * legendre(j, q.nodes[g]);
      const double expect = i == j ? 2.0 / (2 * i + 1) : 0.0;
      CHECK(std::abs(s - expect) < 1e-12);
    }
}

TEST_CASE("mesh geometry") {
  const Mesh1D m(-2.0, 2.0, 8);
  CHECK(m.h() == doctest::Approx(0.5));
  CHECK(m.left(0) == doctest::Approx(-2.0));
  CHECK(m.right(7) == doctest::Approx(2.0));
  CHECK(m.center(4) == doctest::Approx(0.25));
  CHECK(m.to_phys(4, -1.0) == doctest::Approx(0.0));
  CHECK(m.to_phys(4, 1.0) == doctest::Approx(0.5));
  CHECK_THROWS(Mesh1D(0.0, 0.0, 4));
  CHECK_THROWS(Mesh1D(0.0, 1.0, 0));
}

TEST_CASE("l2 projection: x^2 on one element") {
  const Mesh1D m(-1.0, 1.0, 1);
  const GridFunction v = l2_project([](double x) { return x * x; }, m, 2);
  CHECK(v.coef[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(std::abs(v.coef[1]) < 1e-14);
  CHECK(v.coef[2] == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("l2 projection annihilates moments (pro2 conditions)") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Mesh1D m(0.0, 1.5, 4);
  for (int k = 1; k <= 4; ++k) {
    // random polynomial of degree k+3
    std::vector<double> c(k + 4);
    for (auto& ci : c) ci = u(rng);
    auto f = [&c](double x) {
      double acc = 0.0;
      for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
        acc = acc * x + c[i];
      return acc;
    };
    const GridFunction v = l2_project(f, m, k, k + 6);
    const QuadRule q = gauss_rule(k + 6);
    for (int s = 0; s < m.n; ++s)
      for (int p = 0; p <= k; ++p) {
        double mom = 0.0;
        for (int g = 0; g < q.size(); ++g) {
          const double r = q.nodes[g];
          mom += q.weights[g] * (f(m.to_phys(s, r)) - v.eval_ref(s, r)) *
                 legendre(p, r);
        }
        CHECK(std::abs(mom) < 1e-12);
      }
  }
}

TEST_CASE("gauss-radau projection: frozen cubic oracle") {
  // Projecting x^3 on [-1,1] with k = 2, right-endpoint interpolation:
  // orthogonal to P0 and P1 with q(1) = 1 gives
  //   q(x) = -1/5 + (3/5) x + (3/5) x^2  =  0.6 P1 + 0.4 P2.
  const Mesh1D m(-1.0, 1.0, 1);
  const GridFunction v = gauss_radau_project(
      [](double x) { return x * x * x; }, m, 2, Side::minus);
  CHECK(std::abs(v.coef[0]) < 1e-13);
  CHECK(v.coef[1] == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(v.coef[2] == doctest::Approx(0.4).epsilon(1e-12));
  for (double x : {-0.8, -0.1, 0.5}) {
    const double poly = -0.2 + 0.6 * x + 0.6 * x * x;
    CHECK(v.eval(x) == doctest::Approx(poly).epsilon(1e-12));
  }
}

TEST_CASE("gauss-radau projections reproduce degree <= k exactly") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Mesh1D m(-0.5, 2.0, 5);
  for (int k = 1; k <= 4; ++k) {
    std::vector<double> c(k + 1);
    for (auto& ci : c) ci = u(rng);
    auto f = [&c](double x) {
      double acc = 0.0;
      for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
        acc = acc * x + c[i];
      return acc;
    };
    for (Side side : {Side::minus, Side::plus}) {
      const GridFunction v = gauss_radau_project(f, m, k, side);
      for (int s = 0; s < m.n; ++s)
        for (double r : {-1.0, -0.3, 0.6, 1.0})
          CHECK(v.eval_ref(s, r) ==
                doctest::Approx(f(m.to_phys(s, r))).epsilon(1e-12));
    }
  }
}

TEST_CASE("gauss-radau projection: interpolation and orthogonality") {
  const Mesh1D m(0.0, 1.0, 3);
  auto f = [](double x) { return std::sin(3.0 * x); };
  const int k = 3;
  const GridFunction vm = gauss_radau_project(f, m, k, Side::minus, k + 6);
  const GridFunction vp = gauss_radau_project(f, m, k, Side::plus, k + 6);
  const QuadRule q = gauss_rule(k + 6);
  for (int s = 0; s < m.n; ++s) {
    CHECK(vm.eval_ref(s, 1.0) == doctest::Approx(f(m.right(s))).epsilon(1e-12));
    CHECK(vp.eval_ref(s, -1.0) == doctest::Approx(f(m.left(s))).epsilon(1e-12));
    for (int p = 0; p <= k - 1; ++p) {
      double momm = 0.0, momp = 0.0;
      for (int g = 0; g < q.size(); ++g) {
        const double r = q.nodes[g];
        const double fr = f(m.to_phys(s, r));
        momm += q.weights[g] * (fr - vm.eval_ref(s, r)) * legendre(p, r);
        momp += q.weights[g] * (fr - vp.eval_ref(s, r)) * legendre(p, r);
      }
      CHECK(std::abs(momm) < 1e-12);
      CHECK(std::abs(momp) < 1e-12);
    }
  }
}

TEST_CASE("traces, jumps, averages") {
  const Mesh1D m(0.0, 1.0, 2);
  GridFunction v(m, 1);
  // element 0: 1 + r, element 1: 3 - r  (r the reference coordinate)
  v.coef = {1.0, 1.0, 3.0, -1.0};
  CHECK(trace(v, 1, Side::minus) == doctest::Approx(2.0));
  CHECK(trace(v, 1, Side::plus) == doctest::Approx(4.0));
  CHECK(jump(v, 1) == doctest::Approx(2.0));
  CHECK(average(v, 1) == doctest::Approx(3.0));
  CHECK(trace(v, 0, Side::plus) == doctest::Approx(0.0));
  CHECK(trace(v, 2, Side::minus) == doctest::Approx(2.0));
  CHECK_THROWS(trace(v, 0, Side::minus));
  CHECK_THROWS(trace(v, 2, Side::plus));
}

TEST_CASE("norms and errors") {
  const Mesh1D m(0.0, 0.2, 2);  // h = 0.1
  GridFunction v(m, 1);
  v.coef = {2.0, 0.0, 0.0, 0.0};
  // ||P0 coef 2 on one element|| = sqrt(4 * h) = sqrt(0.4)
  CHECK(l2_norm(v) == doctest::Approx(std::sqrt(0.4)).epsilon(1e-13));

  GridFunction w(m, 1);
  w.coef = {0.0, 3.0, 0.0, 0.0};
  // mode-1 mass h/3
  CHECK(l2_norm(w) == doctest::Approx(std::sqrt(9.0 * 0.1 / 3.0)).epsilon(1e-13));

  const Mesh1D mm(0.0, 1.0, 16);
  auto f = [](double x) { return std::cos(2.0 * x); };
  const GridFunction pf = l2_project(f, mm, 3, 8);
  CHECK(l2_error(pf, f) < 1e-6);
  CHECK(l2_error(pf, [](double) { return 0.0; }) ==
        doctest::Approx(l2_norm(pf, 8)).epsilon(1e-10));
}
