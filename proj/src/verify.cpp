#include "volterra/verify.hpp"

#include "volterra/bounds.hpp"
#include "volterra/errors.hpp"
#include "volterra/gram_spectrum.hpp"
#include "volterra/kernel.hpp"
#include "volterra/oracle.hpp"
#include "volterra/point_spectrum.hpp"
#include "volterra/quadrature.hpp"
#include "volterra/special_fn.hpp"
#include "volterra/transform.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>

namespace volterra {

namespace {

// Residual tracker: keeps the largest value seen.
struct Worst {
  double value = 0.0;
  void operator()(double r) {
    if (std::isnan(r)) r = std::numeric_limits<double>::infinity();
    value = std::max(value, r);
  }
};

double relative(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

Grid random_unit_grid(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Grid::Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = u(rng);
  Grid g(v);
  return (1.0 / lp_norm(g, 2.0)) * g;
}

// ---- special functions ----

double gaussian_binomial_positivity(const VerifyOptions&) {
  Worst worst;
  for (double a : {0.1, 0.5, 0.9, 1.0, 2.0, 5.0}) {
    const QParams q(a);
    for (int m = 0; m <= 20; ++m) {
      for (int k = 0; k <= m; ++k) worst(gaussian_binomial(m, k, q) > 0.0 ? 0.0 : 1.0);
    }
  }
  return worst.value;
}

double q_pascal(const VerifyOptions&) {
  Worst worst;
  for (double a : {0.1, 0.5, 0.9, 1.0, 2.0}) {
    const QParams q(a);
    for (int k = 1; k <= 20; ++k) {
      for (int j = 1; j <= k; ++j) {
        const double rhs = gaussian_binomial(k - 1, j - 1, q) +
                           std::pow(a, j) * gaussian_binomial(k - 1, j, q);
        worst(relative(gaussian_binomial(k, j, q), rhs));
      }
    }
  }
  return worst.value;
}

double q_binomial_theorem(const VerifyOptions&) {
  Worst worst;
  for (double a : {0.1, 0.5, 0.9, 1.0, 2.0}) {
    const QParams q(a);
    for (int k = 0; k <= 15; ++k) {
      for (double t : {-1.0, 0.5, 1.0, 2.0}) {
        double lhs = 0.0, scale = 0.0, rhs = 1.0;
        for (int j = 0; j <= k; ++j) {
          const double term =
              std::pow(a, 0.5 * j * (j - 1)) * gaussian_binomial(k, j, q) * std::pow(t, j);
          lhs += term;
          scale += std::abs(term);
        }
        for (int j = 0; j < k; ++j) rhs *= 1.0 + std::pow(a, j) * t;
        // t = -1 makes the product vanish; measure against the term scale.
        worst(std::abs(lhs - rhs) / std::max(std::abs(rhs), scale));
      }
    }
  }
  return worst.value;
}

double q_series_identity(const VerifyOptions&) {
  Worst worst;
  for (double a : {0.2, 0.5, 0.8}) {
    const QParams q(a);
    for (double z : {0.1, 0.5, 0.9}) {
      // (z; a)_k a^k <= a^k, so the tail past K is at most a^K / (1 - a).
      const int terms = static_cast<int>(std::ceil(std::log(1e-14 * (1.0 - a)) / std::log(a)));
      double sum = 0.0, poch = 1.0;
      for (int k = 0; k <= terms; ++k) {
        sum += poch * std::pow(a, k);
        poch *= 1.0 - std::pow(a, k) * z;
      }
      worst(std::abs(sum - (1.0 - euler_product(z, q, 1e-15)) / z));
    }
  }
  return worst.value;
}

// ---- iterated kernels ----

constexpr double kKernelAlphas[] = {0.3, 0.7, 1.0, 1.5, 3.0};

double kernel_range(const VerifyOptions&) {
  Worst worst;
  for (double a : kKernelAlphas) {
    for (int n = 1; n <= 12; ++n) {
      const KernelSpec s(a, n);
      for (int i = 0; i <= 100; ++i) {
        const double g = g_value(s, i / 100.0);
        worst(std::max(-g, g - 1.0));
      }
    }
  }
  return worst.value;
}

double kernel_closed_vs_recursive(const VerifyOptions&) {
  Worst worst;
  for (double a : kKernelAlphas) {
    for (int n = 1; n <= 12; ++n) {
      const KernelSpec s(a, n);
      for (int i = 0; i <= 100; ++i) {
        const double z = i / 100.0;
        worst(std::abs(g_closed(s, z) - g_recursive(s, z)));
      }
    }
  }
  return worst.value;
}

double kernel_lower_bound_check(const VerifyOptions&) {
  Worst worst;
  for (double a : kKernelAlphas) {
    for (int n = 2; n <= 12; ++n) {
      const KernelSpec s(a, n);
      for (int i = 0; i <= 100; ++i) {
        const double z = i / 100.0;
        worst(kernel_lower_bound(s, z) - g_value(s, z));
      }
    }
  }
  return worst.value;
}

std::vector<double> unit_grid_9() {
  std::vector<double> v;
  for (int i = 1; i <= 9; ++i) v.push_back(i / 10.0);
  return v;
}

double kernel_semigroup(const VerifyOptions&) {
  // K_1(x, s) = 1[s <= x^alpha], so the composition integral runs over
  // [0, x^alpha]; 512 Gauss-Legendre nodes split at the kernel's cutoff in s.
  const auto rule = gauss_legendre(512);
  Worst worst;
  for (double a : {0.5, 1.0, 2.0}) {
    for (int n = 1; n <= 5; ++n) {
      const KernelSpec kn(a, n);
      const KernelSpec kn1(a, n + 1);
      for (double x : unit_grid_9()) {
        for (double y : unit_grid_9()) {
          const double upper = std::pow(x, a);
          // K_n(s, y) vanishes unless y <= s^(a^n), i.e. s >= y^(a^-n).
          const double lower = std::min(upper, std::pow(y, std::pow(a, -n)));
          const double integral =
              rule.integrate([&](double s) { return kernel_K(kn, s, y); }, lower, upper);
          worst(std::abs(kernel_K(kn1, x, y) - integral));
        }
      }
    }
  }
  return worst.value;
}

double kernel_step_relation(const VerifyOptions&) {
  Worst worst;
  for (double a : kKernelAlphas) {
    for (int n = 1; n <= 11; ++n) {
      const KernelSpec s(a, n);
      for (int i = 0; i <= 100; ++i) worst(g_step_relation_residual(s, i / 100.0));
    }
  }
  return worst.value;
}

double kernel_recursion(const VerifyOptions&) {
  Worst worst;
  for (double a : {0.5, 1.0, 2.0}) {
    for (int n = 1; n <= 5; ++n) {
      const KernelSpec kn(a, n);
      const KernelSpec kn1(a, n + 1);
      for (double x : unit_grid_9()) {
        for (double y : unit_grid_9()) {
          const double lhs = (kn.a() + 1.0) * kernel_K(kn1, x, y);
          const double rhs = std::pow(x, a) * kernel_K(kn, std::pow(x, a), y) -
                             std::pow(a, n - 1) * std::pow(y, 1.0 / a) *
                                 kernel_K(kn, x, std::pow(y, 1.0 / a));
          worst(std::abs(lhs - rhs));
        }
      }
    }
  }
  return worst.value;
}

// ---- grid transforms ----

double transform_adjoint_duality(const VerifyOptions& o) {
  std::mt19937_64 rng(o.seed);
  Worst worst;
  for (double a : {0.5, 1.0, 2.0}) {
    for (int trial = 0; trial < 4; ++trial) {
      const auto f = random_unit_grid(o.grid_n, rng);
      const auto g = random_unit_grid(o.grid_n, rng);
      worst(std::abs(inner(apply_T(a, f), g) - inner(f, apply_T_adjoint(a, g))));
    }
  }
  return worst.value;
}

double transform_adjoint_identity(const VerifyOptions& o) {
  // (T_0 - T_alpha)* = T_{1/alpha}, tested weakly against random f.
  std::mt19937_64 rng(o.seed + 1);
  Worst worst;
  for (double a : {0.5, 1.0, 2.0}) {
    for (int trial = 0; trial < 4; ++trial) {
      const auto f = random_unit_grid(o.grid_n, rng);
      const auto g = random_unit_grid(o.grid_n, rng);
      const double lhs = inner(apply_T0(g) - apply_T(a, g), f);
      const double rhs = inner(g, apply_T(1.0 / a, f));
      worst(std::abs(lhs - rhs));
    }
  }
  return worst.value;
}

double transform_positivity(const VerifyOptions& o) {
  std::mt19937_64 rng(o.seed + 2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Worst worst;
  for (double a : {0.1, 0.5, 1.0, 2.0, 10.0}) {
    Grid::Vector v(o.grid_n);
    for (int i = 0; i < o.grid_n; ++i) v[i] = u(rng);
    const auto out = apply_T(a, Grid(v));
    worst(std::max(0.0, -out.values().minCoeff()));
  }
  return worst.value;
}

double transform_monotonicity(const VerifyOptions& o) {
  std::mt19937_64 rng(o.seed + 3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Grid::Vector v(o.grid_n);
  for (int i = 0; i < o.grid_n; ++i) v[i] = u(rng);
  const Grid f(v);
  Worst worst;
  const double alphas[] = {0.1, 0.3, 0.5, 1.0, 1.5, 2.0, 5.0};
  for (std::size_t k = 0; k + 1 < std::size(alphas); ++k) {
    const auto diff = apply_T(alphas[k], f) - apply_T(alphas[k + 1], f);
    worst(std::max(0.0, -diff.values().minCoeff()));
  }
  return worst.value;
}

// ---- point spectrum ----

double point_eigen_residuals(const VerifyOptions&) {
  Worst worst;
  for (double a : {0.2, 0.5, 0.8}) {
    for (int n = 0; n <= 4; ++n) {
      for (double p : {1.5, 2.0, 3.0}) worst(eigen_residual(a, n, 4096, p));
    }
  }
  return worst.value;
}

double point_oracle_agreement(const VerifyOptions&) {
  Worst worst;
  for (double a : {0.3, 0.5, 0.7}) {
    const auto est = top_eigenvalues(discretize(a, 2048), 5);
    for (int n = 0; n < 5; ++n) worst(std::abs(est.values[n] - eigenvalue(a, n)));
  }
  return worst.value;
}

double point_quasi_nilpotent(const VerifyOptions&) {
  Worst worst;
  for (double a : {1.0, 1.5, 2.0}) worst(spectral_radius(discretize(a, 2048)));
  return worst.value;
}

double point_coefficient_recursion(const VerifyOptions&) {
  Worst worst;
  for (double a : {0.2, 0.5, 0.8}) {
    for (int n = 0; n <= 6; ++n) {
      const auto f = eigenfunction(a, n);
      const double big_a = a / eigenvalue(a, n);
      const double big_b = a / (1.0 - a);
      for (int k = 0; k < f.degree(); ++k) {
        const double predicted = (big_a * std::pow(a, k) - big_b) / (k + 1) * f.coeffs()[k];
        worst(relative(f.coeffs()[k + 1], predicted) *
              (std::abs(predicted) > 0.0 ? 1.0 : 0.0));
      }
    }
  }
  return worst.value;
}

double point_truncation(const VerifyOptions&) {
  Worst worst;
  for (double a : {0.2, 0.5, 0.8}) {
    for (int n = 0; n <= 6; ++n) {
      const auto f = eigenfunction(a, n);
      worst(f.degree() == n ? 0.0 : 1.0);
      worst(f.coeffs()[n] != 0.0 ? 0.0 : 1.0);
    }
  }
  return worst.value;
}

// ---- Gram spectrum ----

double gram_unit_cosine(const VerifyOptions&) {
  Worst worst;
  for (int i = 0; i <= 1000; ++i) {
    const double z = i / 10.0;
    worst(std::abs(eval_H(1.0, z) - std::cos(2.0 * std::sqrt(z))));
  }
  return worst.value;
}

double gram_zero_count(const VerifyOptions&) {
  // Sign changes of H on a grid finer than the search's own recount must
  // match the zeros returned, and H must alternate between them.
  Worst worst;
  for (double a : {0.3, 1.0, 3.0, kAlphaInfinity}) {
    const int count = 6;
    const auto zeros = find_zeros(a, count);
    const double end = std::sqrt(zeros.back()) * 1.0001 + 1e-9;
    int changes = 0;
    double prev = 1.0;
    const int steps = 20000;
    for (int i = 1; i <= steps; ++i) {
      const double s = end * i / steps;
      const double v = eval_H(a, s * s);
      if ((v < 0.0) != (prev < 0.0)) ++changes;
      prev = v;
    }
    worst(std::abs(changes - count));
    for (int k = 0; k + 1 < count; ++k) {
      const double mid = eval_H(a, 0.5 * (zeros[k] + zeros[k + 1]));
      worst((mid < 0.0) == (k % 2 == 0) ? 0.0 : 1.0);
    }
  }
  return worst.value;
}

double gram_eigenvalue_ordering(const VerifyOptions&) {
  Worst worst;
  for (double a : {0.3, 1.0, 3.0}) {
    double prev = std::numeric_limits<double>::infinity();
    for (int n = 0; n <= 5; ++n) {
      const double lambda = gram_eigenpair(a, n).eigenvalue;
      worst(lambda < prev ? 0.0 : 1.0);
      prev = lambda;
    }
  }
  return worst.value;
}

double gram_boundary_condition(const VerifyOptions&) {
  Worst worst;
  for (double a : {0.3, 0.5, 1.0, 2.0, 3.0}) {
    for (int n = 0; n <= 5; ++n) worst(std::abs(gram_eigenpair(a, n).eigenfunction(1.0)));
  }
  return worst.value;
}

double gram_residuals(const VerifyOptions&) {
  Worst worst;
  for (double a : {0.5, 1.0, 2.0}) {
    for (int n = 0; n <= 2; ++n) worst(gram_residual(a, n, 4096));
  }
  return worst.value;
}

double gram_norm_symmetry(const VerifyOptions&) {
  // T_0 - T_alpha is the adjoint of T_{1/alpha}, so the oracle's norm of
  // the difference must match the exact norm at 1/alpha.
  Worst worst;
  for (double a : {0.05, 0.1, 0.2}) {
    const double oracle =
        largest_singular_value(difference(discretize(0.0, 4096), discretize(a, 4096)));
    worst(std::abs(oracle - norm_22(1.0 / a)));
  }
  return worst.value;
}

double gram_derivative_floor(const VerifyOptions&) {
  // Shortfall below 0.02 of |H'(eps, z)| for real |z| <= 3/2, eps < 1/100.
  double smallest = std::numeric_limits<double>::infinity();
  for (double eps : {0.0, 0.001, 0.005, 0.0099}) {
    for (int i = -150; i <= 150; ++i) {
      smallest = std::min(smallest, std::abs(eval_H_eps_derivative(eps, i / 100.0)));
    }
  }
  return std::max(0.0, 0.02 - smallest);
}

double gram_perturbation_gap(const VerifyOptions&) {
  Worst worst;
  for (double eps : {0.125, 0.1, 0.05, 0.01, 0.001}) {
    for (int i = -12; i <= 12; ++i) {
      const auto g = perturbation_gap(eps, i / 4.0);
      worst(g.gap - g.bound);
    }
  }
  return worst.value;
}

double gram_halmos(const VerifyOptions&) {
  return std::abs(norm_22(1.0) - 2.0 / std::numbers::pi);
}

// ---- bounds ----

double bounds_sandwich_grid(const VerifyOptions&) {
  Worst worst;
  for (double a : {0.01, 0.1, 1.0, 10.0, 100.0}) {
    for (double p : {1.2, 1.5, 2.0, 3.0, 6.0}) {
      for (double q : {1.1, 1.3, 1.5, 2.0, 3.0, 5.0, 10.0}) {
        const auto s = norm_sandwich(a, LpContext(p, q));
        worst(s.lower - s.upper);
      }
    }
  }
  return worst.value;
}

double bounds_oracle_containment(const VerifyOptions&) {
  Worst worst;
  const LpContext ctx(2.0);
  for (double a : {0.1, 0.5, 1.0, 2.0, 10.0}) {
    const double est = pq_norm_estimate(discretize(a, 2048), ctx);
    const auto s = norm_sandwich(a, ctx);
    worst(std::max(s.lower - est, est - s.upper));
  }
  return worst.value;
}

double bounds_preferred_upper(const VerifyOptions&) {
  // Any disagreement between the predicate and the computed bounds counts 1.
  Worst worst;
  for (double a : {0.01, 0.1, 1.0, 10.0, 100.0}) {
    for (double p : {1.2, 1.5, 2.0, 3.0, 6.0}) {
      for (double q : {1.1, 1.3, 1.5, 2.0, 3.0, 5.0, 10.0}) {
        const LpContext ctx(p, q);
        const auto s = norm_sandwich(a, ctx);
        const double gap = s.upper_beta - s.upper_holder;
        const auto choice = preferred_upper_bound(ctx);
        bool agree = false;
        if (choice == UpperBoundChoice::equal) {
          agree = std::abs(gap) <= 1e-10 * s.upper;
        } else if (choice == UpperBoundChoice::holder) {
          agree = gap > 0.0;
        } else {
          agree = gap < 0.0;
        }
        worst(agree ? 0.0 : 1.0);
      }
    }
  }
  return worst.value;
}

double bounds_holder_modulus(const VerifyOptions&) {
  Worst worst;
  const LpContext ctx(2.0);
  const double grid[] = {0.0, 0.5, 1.0, 2.0, 3.0};
  for (double a : grid) {
    for (double b : grid) {
      if (a >= b) continue;
      const double est =
          largest_singular_value(difference(discretize(a, 2048), discretize(b, 2048)));
      worst(est - holder_modulus(a, b, ctx));
    }
  }
  return worst.value;
}

double bounds_iterate_sandwich(const VerifyOptions&) {
  Worst worst;
  const LpContext ctx(2.0);
  for (double a : {0.5, 1.0, 2.0}) {
    const auto m = discretize(a, 2048);
    for (int n = 1; n <= 6; ++n) {
      const double est = iterate_matrix_norm(m, n, ctx);
      const double lower = n >= 2 ? iterate_norm_lower(a, n, 2.0) : 0.0;
      worst(std::max(lower - est, est - iterate_norm_upper(a, n, 2.0)));
    }
  }
  return worst.value;
}

// Spread max/min of positive samples; a bounded ratio has a small spread.
double spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *lo > 0.0 ? *hi / *lo : std::numeric_limits<double>::infinity();
}

double bounds_large_alpha_decay(const VerifyOptions&) {
  // ||T_alpha|| alpha^(1/q) over two decades: the exact (2,2) norm and both
  // sandwich ends for a few (p, q).
  Worst worst;
  std::vector<double> exact;
  for (double a : {1e2, 1e3, 1e4}) exact.push_back(norm_22(a) * std::sqrt(a));
  worst(spread(exact));
  for (double p : {1.5, 2.0, 3.0}) {
    for (double q : {1.5, 2.0, 3.0}) {
      std::vector<double> lower, upper;
      for (double a : {1e2, 1e3, 1e4}) {
        const auto s = norm_sandwich(a, LpContext(p, q));
        lower.push_back(s.lower * std::pow(a, 1.0 / q));
        upper.push_back(s.upper * std::pow(a, 1.0 / q));
      }
      worst(spread(lower));
      worst(spread(upper));
    }
  }
  return worst.value;
}

double bounds_small_alpha_distance(const VerifyOptions&) {
  // ||T_alpha - T_0|| alpha^(-1/p') with p = 2, from the oracle.
  std::vector<double> v;
  for (double a : {1e-4, 1e-3, 1e-2}) {
    v.push_back(largest_singular_value(difference(discretize(a, 4096), discretize(0.0, 4096))) /
                std::sqrt(a));
  }
  return spread(v);
}

double bounds_small_alpha_defect(const VerifyOptions&) {
  std::vector<double> v;
  for (double a : {1e-4, 1e-3, 1e-2}) v.push_back((1.0 - norm_22(a)) / a);
  return spread(v);
}

// ---- oracle ----

double oracle_consistency(const VerifyOptions& o) {
  std::mt19937_64 rng(o.seed + 4);
  Worst worst;
  for (double a : {0.3, 1.0, 2.5}) {
    const auto f = random_unit_grid(o.grid_n, rng);
    const Eigen::VectorXd via_matrix = discretize(a, o.grid_n).apply(f.values());
    worst((via_matrix - apply_T(a, f).values()).cwiseAbs().maxCoeff());
  }
  return worst.value;
}

double oracle_row_sums(const VerifyOptions& o) {
  Worst worst;
  const int n = o.grid_n;
  for (double a : {0.1, 0.5, 1.0, 2.0, 10.0}) {
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
    const Eigen::VectorXd sums = discretize(a, n).apply(ones);
    for (int i = 0; i < n; ++i) worst(std::abs(sums[i] - std::pow(Grid::node(i, n), a)) * n);
  }
  return worst.value;  // in units of 1/N
}

double oracle_iterate_positivity(const VerifyOptions& o) {
  Worst worst;
  for (double a : {0.5, 1.0, 2.0}) {
    const auto m = discretize(a, o.grid_n);
    Eigen::VectorXd v = Eigen::VectorXd::Ones(o.grid_n);
    for (int k = 0; k < 50; ++k) {
      v = m.apply_transpose(m.apply(v));
      v /= v.maxCoeff();
      worst(std::max(0.0, -v.minCoeff()));
    }
  }
  return worst.value;
}

double oracle_mesh_convergence(const VerifyOptions& o) {
  // |s(N) - s(2N)| measured in units of 1/N.
  Worst worst;
  const int n = o.grid_n;
  for (double a : {0.1, 0.3, 1.0, 3.0, 10.0}) {
    const double coarse = largest_singular_value(discretize(a, n));
    const double fine = largest_singular_value(discretize(a, 2 * n));
    worst(std::abs(coarse - fine) * n);
  }
  return worst.value;
}

DiscreteOperator transposed(const OperatorMatrix& m) {
  return DiscreteOperator(
      m.size(), [m](const Eigen::VectorXd& v) { return m.apply_transpose(v); },
      [m](const Eigen::VectorXd& v) { return m.apply(v); });
}

double adjoint_mismatch(double alpha, int n) {
  return largest_singular_value(
      difference(transposed(discretize(alpha, n)), discretize_adjoint(alpha, n)));
}

double oracle_adjoint_unit(const VerifyOptions& o) { return adjoint_mismatch(1.0, o.grid_n); }

double oracle_adjoint_convergence(const VerifyOptions& o) {
  // Ratio of the transpose/adjoint mismatch at 4N to that at N.
  Worst worst;
  for (double a : {0.2, 0.5, 2.0, 5.0}) {
    worst(adjoint_mismatch(a, 4 * o.grid_n) / adjoint_mismatch(a, o.grid_n));
  }
  return worst.value;
}

double oracle_unit_cut_identity(const VerifyOptions& o) {
  // M_0 - M_alpha is the upper-orientation matrix with cuts at x_i^alpha,
  // which for alpha = 1 is exactly discretize_adjoint(1).
  std::mt19937_64 rng(o.seed + 5);
  const auto f = random_unit_grid(o.grid_n, rng);
  const Eigen::VectorXd lhs =
      discretize(0.0, o.grid_n).apply(f.values()) - discretize(1.0, o.grid_n).apply(f.values());
  const Eigen::VectorXd rhs = discretize_adjoint(1.0, o.grid_n).apply(f.values());
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

struct Entry {
  const char* name;
  double tolerance;  // negative: scaled as -tolerance / grid_n
  double (*check)(const VerifyOptions&);
};

const Entry kEntries[] = {
    {"special_fn.gaussian_binomial_positive", 0.0, gaussian_binomial_positivity},
    {"special_fn.q_pascal", 1e-12, q_pascal},
    {"special_fn.q_binomial_theorem", 1e-10, q_binomial_theorem},
    {"special_fn.q_series_identity", 1e-10, q_series_identity},
    {"kernel.g_range", 1e-9, kernel_range},
    {"kernel.closed_vs_recursive", 1e-7, kernel_closed_vs_recursive},
    {"kernel.lower_bound", 1e-9, kernel_lower_bound_check},
    {"kernel.semigroup", 1e-6, kernel_semigroup},
    {"kernel.step_relation", 1e-8, kernel_step_relation},
    {"kernel.two_term_recursion", 1e-8, kernel_recursion},
    {"transform.adjoint_duality", -5.0, transform_adjoint_duality},
    {"transform.difference_adjoint", -5.0, transform_adjoint_identity},
    {"transform.positivity", 0.0, transform_positivity},
    {"transform.monotone_in_alpha", 0.0, transform_monotonicity},
    {"point_spectrum.eigen_residuals", 5e-3, point_eigen_residuals},
    {"point_spectrum.oracle_eigenvalues", 2e-3, point_oracle_agreement},
    {"point_spectrum.quasi_nilpotent", 5e-3, point_quasi_nilpotent},
    {"point_spectrum.coefficient_recursion", 1e-12, point_coefficient_recursion},
    {"point_spectrum.truncation", 0.0, point_truncation},
    {"gram_spectrum.unit_cosine", 1e-12, gram_unit_cosine},
    {"gram_spectrum.zero_count", 0.0, gram_zero_count},
    {"gram_spectrum.eigenvalue_ordering", 0.0, gram_eigenvalue_ordering},
    {"gram_spectrum.boundary_condition", 1e-10, gram_boundary_condition},
    {"gram_spectrum.gram_residuals", 5e-3, gram_residuals},
    {"gram_spectrum.difference_norm_symmetry", 2e-3, gram_norm_symmetry},
    {"gram_spectrum.derivative_floor", 0.0, gram_derivative_floor},
    {"gram_spectrum.perturbation_gap", 0.0, gram_perturbation_gap},
    {"gram_spectrum.unit_norm", 1e-8, gram_halmos},
    {"bounds.sandwich_order", 0.0, bounds_sandwich_grid},
    {"bounds.oracle_containment", 2e-3, bounds_oracle_containment},
    {"bounds.preferred_upper_bound", 0.0, bounds_preferred_upper},
    {"bounds.holder_modulus", 2e-3, bounds_holder_modulus},
    {"bounds.iterate_sandwich", 2e-3, bounds_iterate_sandwich},
    {"bounds.large_alpha_decay_spread", 2.0, bounds_large_alpha_decay},
    {"bounds.small_alpha_distance_spread", 2.0, bounds_small_alpha_distance},
    {"bounds.small_alpha_defect_spread", 2.0, bounds_small_alpha_defect},
    {"oracle.matches_apply_T", 1e-14, oracle_consistency},
    {"oracle.row_sums", 0.5, oracle_row_sums},
    {"oracle.iterate_positivity", 0.0, oracle_iterate_positivity},
    {"oracle.mesh_convergence", 4.0, oracle_mesh_convergence},
    {"oracle.adjoint_unit_exact", 1e-12, oracle_adjoint_unit},
    {"oracle.adjoint_convergence_ratio", 0.5, oracle_adjoint_convergence},
    {"oracle.difference_is_upper_cut", 1e-14, oracle_unit_cut_identity},
};

const Entry& find_entry(const std::string& name) {
  for (const auto& e : kEntries) {
    if (name == e.name) return e;
  }
  throw DomainError("unknown invariant: " + name);
}

}  // namespace

const std::vector<std::string>& invariant_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& e : kEntries) v.emplace_back(e.name);
    return v;
  }();
  return names;
}

InvariantRecord run_invariant(const std::string& name, const VerifyOptions& options) {
  if (options.grid_n < 16) throw DomainError("verify: grid_n must be >= 16");
  const auto& e = find_entry(name);
  const double tol = e.tolerance < 0.0 ? -e.tolerance / options.grid_n : e.tolerance;
  const double r = e.check(options);
  return {e.name, r, tol, r <= tol};
}

std::vector<InvariantRecord> run_invariants(const VerifyOptions& options) {
  std::vector<InvariantRecord> out;
  for (const auto& name : invariant_names()) out.push_back(run_invariant(name, options));
  return out;
}

}  // namespace volterra
