#include <doctest.h>

#include "volterra/errors.hpp"
#include "volterra/kernel.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>

using namespace volterra;

TEST_CASE("kernel spec coefficients") {
  const KernelSpec half(0.5, 3);
  CHECK(half.a() == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(half.b() == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

  const KernelSpec unit(1.0, 4);
  CHECK(unit.unit());
  CHECK(unit.a() == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(unit.b() == doctest::Approx(1.0 / 6.0).epsilon(1e-14));

  for (double a : {0.3, 1.0, 2.5}) {
    const auto s = make_kernel_spec(a, 1);
    CHECK(s.a() == 0.0);
    CHECK(s.b() == doctest::Approx(1.0));
  }
}

TEST_CASE("log b_n stays finite for very long iterations") {
  for (double a : {0.5, 1.0, 2.0}) {
    const KernelSpec s(a, 10000);
    CHECK(std::isfinite(s.log_b()));
  }
  // b_n at alpha = 2 decays like 2^(-n^2/2).
  const KernelSpec big(2.0, 10000);
  CHECK(big.log_b() < -1e7);
  CHECK_THROWS_AS(KernelSpec(0.0, 3), DomainError);
  CHECK_THROWS_AS(KernelSpec(0.5, 0), DomainError);
}

TEST_CASE("closed form matches the explicit low-order kernels") {
  for (double a : {0.4, 0.8, 1.6, 3.0}) {
    for (double z : {0.0, 0.1, 0.5, 0.9, 1.0}) {
      CHECK(g_closed(KernelSpec(a, 2), z) == doctest::Approx(1.0 - std::pow(z, 1.0 / a)).epsilon(1e-12));
      const double g3 = 1.0 - (a + 1.0) * std::pow(z, 1.0 / a) + a * std::pow(z, 1.0 / a + 1.0 / (a * a));
      CHECK(std::abs(g_closed(KernelSpec(a, 3), z) - g3) <= 1e-12);
    }
  }
  CHECK(g_closed(KernelSpec(1.0, 4), 0.4) == doctest::Approx(0.216).epsilon(1e-13));
}

TEST_CASE("g_3 from direct quadrature of the integral recursion") {
  // g_3(z) = (a_2 + 1) int_{z^(1/a^2)}^1 w^(a_2) g_2(w^(-a^2) z) dw, g_2(u) = 1 - u^(1/a).
  boost::math::quadrature::tanh_sinh<double> integrator;
  for (double a : {0.5, 0.7, 2.0}) {
    const KernelSpec s2(a, 2);
    for (double z : {0.05, 0.3, 0.8}) {
      const double lo = std::pow(z, 1.0 / (a * a));
      const double value = (s2.a() + 1.0) * integrator.integrate(
                                                 [&](double w) {
                                                   const double u = std::pow(w, -a * a) * z;
                                                   return std::pow(w, s2.a()) * (1.0 - std::pow(u, 1.0 / a));
                                                 },
                                                 lo, 1.0);
      CHECK(std::abs(g_closed(KernelSpec(a, 3), z) - value) <= 1e-10);
      CHECK(std::abs(g_recursive(KernelSpec(a, 3), z) - value) <= 1e-9);
    }
  }
}

TEST_CASE("recursive evaluation") {
  CHECK(g_recursive(KernelSpec(0.5, 1), 0.3) == 1.0);
  CHECK(g_recursive(KernelSpec(0.5, 2), 0.25) == doctest::Approx(0.9375).epsilon(1e-10));
  CHECK(g_recursive(KernelSpec(1.0, 4), 0.4) == doctest::Approx(0.216).epsilon(1e-9));
  const KernelSpec s(0.7, 5);
  CHECK(std::abs(g_closed(s, 0.3) - g_recursive(s, 0.3)) <= 1e-8);
  CHECK_THROWS_AS(g_recursive(s, 0.3, 16), DomainError);
}

TEST_CASE("g_value survives where the alternating sum cancels badly") {
  for (int n : {12, 20, 30}) {
    const KernelSpec s(3.0, n);
    for (double z : {0.01, 0.5, 0.99}) {
      const double g = g_value(s, z);
      CHECK(g >= 0.0);
      CHECK(g <= 1.0);
      CHECK(g >= kernel_lower_bound(s, z) - 1e-9);
    }
  }
}

TEST_CASE("step relation between consecutive kernels") {
  CHECK(g_step_relation_residual(KernelSpec(0.5, 1), 0.5) <= 1e-10);
  CHECK(g_step_relation_residual(KernelSpec(0.8, 3), 0.9) <= 1e-9);
  CHECK(g_step_relation_residual(KernelSpec(2.0, 6), 0.1) <= 1e-8);
}

TEST_CASE("iterated kernel values") {
  for (double a : {0.5, 2.0}) {
    const KernelSpec k1(a, 1);
    CHECK(kernel_K(k1, 0.6, std::pow(0.6, a) * 0.99) == 1.0);
    CHECK(kernel_K(k1, 0.6, std::pow(0.6, a) * 1.01) == 0.0);
  }
  CHECK(kernel_K(KernelSpec(1.0, 3), 0.9, 0.2) == doctest::Approx(0.245).epsilon(1e-12));
  CHECK(kernel_K(KernelSpec(0.5, 1), 0.0, 0.0) == 1.0);
  CHECK(kernel_K(KernelSpec(0.5, 3), 0.0, 0.2) == 0.0);
  CHECK(kernel_K(KernelSpec(2.0, 3), 0.5, 0.9) == 0.0);
}

TEST_CASE("two-fold kernel equals the composition integral") {
  // K_2(x, y) = int_0^1 K_1(x, s) K_1(s, y) ds over s in [y^(1/a), x^a].
  const double a = 0.5, x = 0.64, y = 0.5;
  boost::math::quadrature::tanh_sinh<double> integrator;
  const double value = integrator.integrate(
      [&](double s) { return kernel_K(KernelSpec(a, 1), x, s) * kernel_K(KernelSpec(a, 1), s, y); },
      std::pow(y, 1.0 / a), std::pow(x, a));
  CHECK(kernel_K(KernelSpec(a, 2), x, y) == doctest::Approx(value).epsilon(1e-10));
  CHECK(value == doctest::Approx(std::pow(x, a) - std::pow(y, 1.0 / a)).epsilon(1e-12));
}

TEST_CASE("lower bound for g_n") {
  for (double a : {0.4, 2.0}) {
    for (double z : {0.1, 0.6}) {
      CHECK(kernel_lower_bound(KernelSpec(a, 2), z) ==
            doctest::Approx(g_closed(KernelSpec(a, 2), z)).epsilon(1e-14));
    }
  }
  CHECK(kernel_lower_bound(KernelSpec(1.0, 3), 0.25) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(kernel_lower_bound(KernelSpec(1.0, 3), 0.25) <= g_closed(KernelSpec(1.0, 3), 0.25));
  CHECK(kernel_lower_bound(KernelSpec(2.0, 5), 0.6) <= g_value(KernelSpec(2.0, 5), 0.6) + 1e-12);
  CHECK_THROWS_AS(kernel_lower_bound(KernelSpec(2.0, 1), 0.6), DomainError);
}
