#pragma once

namespace volterra {

/// The q-base of the Gaussian binomials and q-products. Named after its role
/// in the operator family, where the base is the exponent alpha of T_alpha.
class QParams {
 public:
  /// Throws DomainError unless alpha is finite and positive.
  explicit QParams(double alpha);

  double alpha() const noexcept { return alpha_; }

  /// True when alpha is close enough to 1 that q-ratios of the form
  /// (1 - alpha^a) / (1 - alpha^b) must be replaced by their limit a / b.
  bool is_unit() const noexcept { return unit_; }

  static constexpr double kUnitTolerance = 1e-8;

 private:
  double alpha_;
  bool unit_;
};

/// log Gamma(x) for x > 0.
double log_gamma(double x);

/// Euler Beta function B(a, b), evaluated through log_gamma.
double beta(double a, double b);

/// Gaussian (alpha-analogue) binomial coefficient [m choose k]_alpha.
/// Returns 0 for k > m; reduces to the ordinary binomial at alpha = 1.
double gaussian_binomial(int m, int k, const QParams& q);

/// Finite q-Pochhammer symbol (z; alpha)_k = prod_{j<k} (1 - alpha^j z).
double q_pochhammer(double z, const QParams& q, int k);

/// Number of leading factors of (z; alpha)_inf that euler_product keeps so
/// that the discarded tail changes the log of the product by at most `tol`.
int euler_product_factors(double z, const QParams& q, double tol);

/// Infinite product (z; alpha)_inf for alpha < 1, truncated with the
/// certified bound sum_{j >= J} |alpha^j z| / (1 - |alpha^j z|) <= tol.
double euler_product(double z, const QParams& q, double tol);

}  // namespace volterra
