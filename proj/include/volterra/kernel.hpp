#pragma once

namespace volterra {

/// Parameters of the n-th iterated kernel K_n of T_alpha:
///   K_n(x, y) = b_n * 1[y <= x^(alpha^n)] * x^(a_n) * g_n(x^(-alpha^n) y).
/// a_n and b_n are cached at construction; log_b is kept separately because
/// b_n leaves the double range long before n = 10^4 when alpha > 1.
class KernelSpec {
 public:
  KernelSpec(double alpha, int n);

  double alpha() const noexcept { return alpha_; }
  int n() const noexcept { return n_; }
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double log_b() const noexcept { return log_b_; }
  bool unit() const noexcept { return unit_; }

 private:
  double alpha_;
  int n_;
  double a_;
  double b_;
  double log_b_;
  bool unit_;
};

KernelSpec make_kernel_spec(double alpha, int n);

/// sum_{i=1}^{k} alpha^(-i). This is both the z-exponent of the k-th term of
/// the closed form of g_n and the decay rate of the k-th smoothing step of
/// the recursion in the variable t = -log z.
double kernel_rate(double alpha, int k);

/// g_n from the alternating Gaussian-binomial closed form. Terms are summed
/// with compensation; when the rounding bound of the double evaluation is
/// above 1e-10 the sum is redone in 50-digit arithmetic. Throws
/// NumericalInstability when even that is not enough, or when the result
/// leaves [-1e-6, 1 + 1e-6]. Results within that band are clamped to [0, 1].
double g_closed(const KernelSpec& spec, double z);

/// g_n from the integral recursion g_1 = 1,
///   g_{k+1}(z) = (a_k + 1) int_{z^(1/alpha^k)}^1 w^(a_k) g_k(w^(-alpha^k) z) dw.
/// Under z = e^-t each step is a causal exponential smoothing with rate
/// kernel_rate(alpha, k); every level is tabulated on composite
/// Gauss-Legendre panels over [0, -log z], and the panel count doubles until
/// the result moves by less than 1e-9 per level. `quad_points` is the
/// initial node budget (>= 64). Throws AccuracyError if refinement stalls.
double g_recursive(const KernelSpec& spec, double z, int quad_points = 64);

/// Closed form with the recursive evaluation as fallback.
double g_value(const KernelSpec& spec, double z);

/// |g_{n+1}(z) - g_n(z) + alpha^(n-1) z^(1/alpha) g_n(z^(1/alpha))| using
/// the closed form throughout.
double g_step_relation_residual(const KernelSpec& spec, double z);

/// The iterated kernel K_n(x, y) on [0, 1]^2.
double kernel_K(const KernelSpec& spec, double x, double y);

/// (1 - z^(1/((n-1) alpha)))^(n-1), a lower bound for g_n(z); needs n >= 2.
double kernel_lower_bound(const KernelSpec& spec, double z);

}  // namespace volterra
