#include "volterra/point_spectrum.hpp"

#include "volterra/errors.hpp"
#include "volterra/transform.hpp"

#include <Eigen/QR>

#include <cmath>
#include <string>

namespace volterra {

namespace {

void require_contracting(double alpha, const char* who) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError(std::string(who) +
                      ": point spectrum is empty unless 0 < alpha < 1");
  }
}

}  // namespace

PowerLogFunction::PowerLogFunction(double gamma, Eigen::VectorXd coeffs)
    : gamma_(gamma), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() == 0) throw DomainError("PowerLogFunction: empty polynomial");
}

double PowerLogFunction::operator()(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("PowerLogFunction: x outside [0, 1]");
  if (x == 0.0) return 0.0;
  const double log_x = std::log(x);
  double poly = 0.0;
  for (Eigen::Index k = coeffs_.size() - 1; k >= 0; --k) {
    poly = poly * log_x + coeffs_[k];
  }
  return std::exp(gamma_ * log_x) * poly;
}

SpectrumReport spectrum_description(double alpha, int listed) {
  if (!(alpha > 0.0)) throw DomainError("spectrum_description: alpha must be positive");
  SpectrumReport report{alpha, alpha >= 1.0, 0.0, {}};
  if (report.quasi_nilpotent) return report;
  report.spectral_radius = 1.0 - alpha;
  for (int n = 0; n < listed; ++n) report.eigenvalues.push_back(eigenvalue(alpha, n));
  return report;
}

double eigenvalue(double alpha, int n) {
  require_contracting(alpha, "eigenvalue");
  if (n < 0) throw DomainError("eigenvalue: n must be nonnegative");
  return std::exp(n * std::log(alpha) + std::log1p(-alpha));
}

PowerLogFunction eigenfunction(double alpha, int n) {
  require_contracting(alpha, "eigenfunction");
  if (n < 0) throw DomainError("eigenfunction: n must be nonnegative");
  Eigen::VectorXd coeffs(n + 1);
  coeffs[0] = 1.0;
  const double denominator = 1.0 - 1.0 / alpha;
  for (int k = 1; k <= n; ++k) {
    const double factor = (1.0 - std::pow(alpha, k - 1 - n)) / denominator;
    coeffs[k] = coeffs[k - 1] * factor / k;
  }
  return PowerLogFunction(alpha / (1.0 - alpha), std::move(coeffs));
}

double eigen_residual(double alpha, int n, int grid, double p) {
  const auto f = eigenfunction(alpha, n);
  const double lambda = eigenvalue(alpha, n);
  const auto sampled = Grid::sample(grid, f);
  const auto image = apply_T(alpha, sampled);
  return lp_norm(image - lambda * sampled, p) / lp_norm(sampled, p);
}

std::vector<double> projection_residuals(double alpha, int max_degree, int grid) {
  require_contracting(alpha, "projection_residuals");
  const auto target = Grid::sample(grid, [](double x) { return std::cos(x); });
  const double root_h = std::sqrt(1.0 / grid);
  std::vector<double> residuals;
  Eigen::MatrixXd basis(grid, max_degree + 1);
  for (int m = 0; m <= max_degree; ++m) {
    const auto f = eigenfunction(alpha, m);
    const auto column = Grid::sample(grid, f);
    basis.col(m) = column.values() / lp_norm(column, 2.0);
  }
  for (int m = 0; m <= max_degree; ++m) {
    const auto a = basis.leftCols(m + 1);
    const Eigen::VectorXd coeffs = a.colPivHouseholderQr().solve(target.values());
    residuals.push_back(root_h * (a * coeffs - target.values()).norm());
  }
  return residuals;
}

}  // namespace volterra
