#include <doctest.h>

#include "volterra/kernel.hpp"
#include "volterra/transform.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <random>

using namespace volterra;

namespace {

double max_abs(const Grid::Vector& v) { return v.cwiseAbs().maxCoeff(); }

// T_alpha^n applied to x^s, by T x^s = x^(alpha (s + 1)) / (s + 1).
double power_orbit(double alpha, int n, double x) {
  double s = 0.0, c = 1.0;
  for (int k = 0; k < n; ++k) {
    c /= s + 1.0;
    s = alpha * (s + 1.0);
  }
  return c * std::pow(x, s);
}

}  // namespace

TEST_CASE("grid weights and basic sampling") {
  const auto f = Grid::sample(100, [](double x) { return x; });
  CHECK(f.size() == 100);
  CHECK(f.weights().sum() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f[0] == doctest::Approx(0.005));
  CHECK_THROWS_AS(Grid::constant(1, 1.0), DomainError);
}

TEST_CASE("LpContext conjugates") {
  const LpContext ctx(3.0, 1.5);
  CHECK(1.0 / ctx.p() + 1.0 / ctx.p_conj() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(1.0 / ctx.q() + 1.0 / ctx.q_conj() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(LpContext(1.0, 2.0), DomainError);
  CHECK_THROWS_AS(LpContext(2.0, INFINITY), DomainError);
}

TEST_CASE("T applied to constants") {
  const int n = 1000;
  const auto one = Grid::constant(n, 1.0);
  for (double a : {0.3, 1.0, 2.0, 7.0}) {
    const auto exact = Grid::sample(n, [&](double x) { return std::pow(x, a); });
    CHECK(max_abs((apply_T(a, one) - exact).values()) <= 0.5 / n);
    const auto adj = Grid::sample(n, [&](double x) { return 1.0 - std::pow(x, 1.0 / a); });
    CHECK(max_abs((apply_T_adjoint(a, one) - adj).values()) <= 0.5 / n);
  }
}

TEST_CASE("power eigenfunction of T_1/2") {
  const int n = 4096;
  const double a = 0.5;
  const auto f = Grid::sample(n, [&](double x) { return std::pow(x, a / (1.0 - a)); });
  CHECK(max_abs((apply_T(a, f) - 0.5 * f).values()) <= 2.0 / n);
}

TEST_CASE("adjoint of the Volterra operator on y") {
  const int n = 2048;
  const auto f = Grid::sample(n, [](double x) { return x; });
  const auto exact = Grid::sample(n, [](double x) { return 0.5 * (1.0 - x * x); });
  CHECK(max_abs((apply_T_adjoint(1.0, f) - exact).values()) <= 2.0 / n);
}

TEST_CASE("duality pairing of T and its adjoint") {
  const int n = 2048;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (double a : {0.5, 1.0, 2.0}) {
    Grid::Vector fv(n), gv(n);
    for (int i = 0; i < n; ++i) fv[i] = u(rng), gv[i] = u(rng);
    const Grid f(fv), g(gv);
    CHECK(std::abs(inner(apply_T(a, f), g) - inner(f, apply_T_adjoint(a, g))) <= 5.0 / n);
  }
}

TEST_CASE("iterates") {
  const int n = 4096;
  const auto one = Grid::constant(n, 1.0);
  CHECK(max_abs((apply_T_iterate(0.7, one, 1) - apply_T(0.7, one)).values()) == 0.0);

  const auto v2 = Grid::sample(n, [](double x) { return 0.5 * x * x; });
  CHECK(max_abs((apply_T_iterate(1.0, one, 2) - v2).values()) <= 2.0 / n);

  // f = 1, alpha = 2, n = 3: compare with int K_3(x, y) dy and the exact orbit.
  const auto iter = apply_T_iterate(2.0, one, 3);
  const KernelSpec k3(2.0, 3);
  boost::math::quadrature::tanh_sinh<double> integrator;
  for (int i = 0; i < n; i += 409) {
    const double x = one.node(i);
    const double top = std::pow(x, 8.0);
    const double quad =
        top > 0.0 ? integrator.integrate([&](double y) { return kernel_K(k3, x, y); }, 0.0, top) : 0.0;
    CHECK(std::abs(quad - power_orbit(2.0, 3, x)) <= 1e-12);
    CHECK(std::abs(iter[i] - quad) <= 1e-4);
  }
  CHECK_THROWS_AS(apply_T_iterate(2.0, one, 0), DomainError);
}

TEST_CASE("positivity and monotonicity in alpha") {
  const auto f = Grid::sample(512, [](double x) { return 1.0 + std::sin(20.0 * x); });
  const auto lo = apply_T(0.5, f);
  const auto hi = apply_T(1.5, f);
  CHECK(lo.values().minCoeff() >= 0.0);
  CHECK((lo - hi).values().minCoeff() >= 0.0);
}

TEST_CASE("lp norms on the grid") {
  const int n = 2000;
  CHECK(lp_norm(Grid::constant(n, -3.0), 2.5) == doctest::Approx(3.0).epsilon(1e-13));
  const auto x = Grid::sample(n, [](double t) { return t; });
  CHECK(std::abs(lp_norm(x, 2.0) - 1.0 / std::sqrt(3.0)) <= 1.0 / (n * n));
  CHECK(std::abs(lp_norm(x, 3.0) - std::pow(4.0, -1.0 / 3.0)) <= 1.0 / (n * n));
}

TEST_CASE("generic scalar type") {
  using LGrid = GridFunction<long double>;
  const auto one = LGrid::constant(64, 1.0L);
  const auto t = apply_T(1.0L, one);
  CHECK(static_cast<double>(t[10]) == doctest::Approx(10.5 / 64.0).epsilon(1e-15));
}
