#pragma once

#include <Eigen/Core>

#include <vector>

namespace volterra {

/// f(x) = x^gamma * sum_k coeffs[k] (log x)^k on (0, 1], extended by its
/// limit 0 at x = 0 (gamma > 0).
class PowerLogFunction {
 public:
  PowerLogFunction(double gamma, Eigen::VectorXd coeffs);

  double gamma() const noexcept { return gamma_; }
  const Eigen::VectorXd& coeffs() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

  double operator()(double x) const;

 private:
  double gamma_;
  Eigen::VectorXd coeffs_;
};

struct SpectrumReport {
  double alpha;
  bool quasi_nilpotent;              // spectrum is {0}, no eigenvalues
  double spectral_radius;            // max(1 - alpha, 0)
  std::vector<double> eigenvalues;   // leading alpha^n (1 - alpha), n < listed
};

/// Spectrum of T_alpha on L^p: {0} for alpha >= 1; otherwise {0} together
/// with the eigenvalues alpha^n (1 - alpha), of which the first `listed` are
/// returned.
SpectrumReport spectrum_description(double alpha, int listed = 5);

/// alpha^n (1 - alpha) for 0 < alpha < 1.
double eigenvalue(double alpha, int n);

/// Eigenfunction for eigenvalue(alpha, n), normalized by coeffs[0] = 1:
///   coeffs[k] = (1/k!) prod_{j<k} (1 - alpha^(j-n)) / (1 - 1/alpha).
PowerLogFunction eigenfunction(double alpha, int n);

/// ||T_alpha f - lambda_n f||_p / ||f||_p for the sampled eigenfunction on a
/// midpoint grid of `grid` cells.
double eigen_residual(double alpha, int n, int grid, double p);

/// Weighted least-squares residuals of a fixed smooth function (cos x) when
/// projected onto span{f_0, ..., f_m}, m = 0 .. max_degree, in discrete L^2.
std::vector<double> projection_residuals(double alpha, int max_degree, int grid);

}  // namespace volterra
