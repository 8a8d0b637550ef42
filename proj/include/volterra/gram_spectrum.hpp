#pragma once

#include <Eigen/Core>

#include <limits>
#include <vector>

namespace volterra {

/// Marker for the alpha -> infinity member, whose series is sum (-z)^k/(k!)^2.
inline constexpr double kAlphaInfinity = std::numeric_limits<double>::infinity();

/// The entire function
///   H_alpha(z) = sum_k (-z)^k / (k! prod_{j=1}^k (j - 1/(1+alpha))),
/// summed with compensation in 113-bit arithmetic until the certified tail
/// is below 1e-14. alpha may be kAlphaInfinity.
double eval_H(double alpha, double z);

/// Term-wise derivative of eval_H, same tail policy.
double eval_H_derivative(double alpha, double z);

/// The series in the parameterization eps = 1/(1+alpha) used by the
/// perturbation bound; eps = 0 is the alpha = infinity member.
double eval_H_eps(double eps, double z);
double eval_H_eps_derivative(double eps, double z);

/// H_alpha(scale * x^step) as a function of x in [0, 1]: the Gram
/// eigenfunction once `scale` is a zero of H_alpha and step = (1+alpha)/alpha.
/// The truncation is fixed at construction for the radius x = 1.
class TruncatedSeries {
 public:
  TruncatedSeries(double alpha, double scale, double step);

  double operator()(double x) const;

  double scale() const noexcept { return scale_; }
  double step() const noexcept { return step_; }
  int terms() const noexcept { return terms_; }
  double tail_bound() const noexcept { return tail_bound_; }

  /// c_k such that the series is sum_k c_k x^(k step), k < terms().
  Eigen::VectorXd coefficients() const;

 private:
  double alpha_;
  double scale_;
  double step_;
  int terms_;
  double tail_bound_;
};

/// Positive zeros h_0 < h_1 < ... of H_alpha. Scans sqrt(z) with steps no
/// larger than pi/80 (the zero spacing of cos(2 sqrt z) is pi/2 there),
/// refines each sign change by safeguarded Newton, then recounts sign
/// changes on a ten times finer scan. Throws SearchHorizonError with the
/// zeros found so far if the horizon is exhausted.
std::vector<double> find_zeros(double alpha, int count);

struct GramEigenpair {
  int index;
  double zero_h;       // h_n(alpha)
  double eigenvalue;   // alpha / ((1+alpha)^2 h_n)
  TruncatedSeries eigenfunction;
};

/// n-th eigenpair of T*_alpha T_alpha on L^2[0, 1].
GramEigenpair gram_eigenpair(double alpha, int n);

/// ||T*T f - lambda f||_2 / ||f||_2 for the n-th Gram eigenpair sampled on
/// a midpoint grid of `grid` cells.
double gram_residual(double alpha, int n, int grid);

/// ||T_alpha||_{2,2} = sqrt(alpha / h_0(alpha)) / (1 + alpha).
double norm_22(double alpha);

/// 1 - 3 alpha / 4, the first-order prediction for ||T_alpha||_{2,2};
/// defined for 0 < alpha <= 0.1.
double small_alpha_expansion(double alpha);

/// |norm_22(alpha) - small_alpha_expansion(alpha)| / alpha^2.
double small_alpha_ratio(double alpha);

struct PerturbationGap {
  double gap;    // |H(eps, z) - H(0, z)|
  double bound;  // 5 eps e^|z|
};

/// Distance between the series at eps and its eps = 0 limit, alongside the
/// analytic bound that holds for 0 < eps <= 1/8.
PerturbationGap perturbation_gap(double eps, double z);

}  // namespace volterra
