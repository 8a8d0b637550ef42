#include "volterra/special_fn.hpp"

#include "volterra/errors.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <string>

namespace volterra {

QParams::QParams(double alpha) : alpha_(alpha), unit_(false) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("QParams: alpha must be finite and positive, got " +
                      std::to_string(alpha));
  }
  unit_ = std::abs(alpha - 1.0) < kUnitTolerance;
}

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("log_gamma: argument must be positive, got " +
                      std::to_string(x));
  }
  return boost::math::lgamma(x);
}

double beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw DomainError("beta: arguments must be positive");
  }
  return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

namespace {

// log((1 - alpha^a) / (1 - alpha^b)) for positive integers a, b, accurate
// when alpha is near 1 because both factors go through expm1.
double log_q_ratio(double log_alpha, int a, int b) {
  const double num = std::expm1(a * log_alpha);
  const double den = std::expm1(b * log_alpha);
  return std::log(num / den);
}

}  // namespace

double gaussian_binomial(int m, int k, const QParams& q) {
  if (m < 0 || k < 0) {
    throw DomainError("gaussian_binomial: negative argument");
  }
  if (k > m) return 0.0;
  k = std::min(k, m - k);
  if (q.is_unit()) {
    return std::round(std::exp(log_gamma(m + 1.0) - log_gamma(k + 1.0) -
                               log_gamma(m - k + 1.0)));
  }
  // Products of many near-one ratios are accumulated as a sum of logs.
  const double log_alpha = std::log(q.alpha());
  double log_value = 0.0;
  for (int j = 1; j <= k; ++j) {
    log_value += log_q_ratio(log_alpha, m - k + j, j);
  }
  return std::exp(log_value);
}

double q_pochhammer(double z, const QParams& q, int k) {
  if (k < 0) throw DomainError("q_pochhammer: k must be nonnegative");
  double product = 1.0;
  double power = 1.0;
  for (int j = 0; j < k; ++j) {
    product *= 1.0 - power * z;
    power *= q.alpha();
  }
  return product;
}

int euler_product_factors(double z, const QParams& q, double tol) {
  const double alpha = q.alpha();
  if (alpha >= 1.0) {
    throw DomainError("euler_product: requires alpha < 1");
  }
  if (!(tol > 0.0)) throw DomainError("euler_product: tol must be positive");
  if (z == 0.0) return 0;
  constexpr int kMaxFactors = 10'000'000;
  double r = std::abs(z);
  for (int j = 0; j < kMaxFactors; ++j) {
    // Tail from j on: sum_i r alpha^i / (1 - r alpha^i) <= r / ((1-r)(1-alpha)).
    if (r < 1.0 && r / ((1.0 - r) * (1.0 - alpha)) <= tol) return j;
    r *= alpha;
  }
  throw ConvergenceError("euler_product: tail bound not reached", r);
}

double euler_product(double z, const QParams& q, double tol) {
  return q_pochhammer(z, q, euler_product_factors(z, q, tol));
}

}  // namespace volterra
