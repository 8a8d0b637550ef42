#include "volterra/bounds.hpp"

#include "volterra/kernel.hpp"
#include "volterra/special_fn.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace volterra {

namespace {

void require_alpha(double alpha, const char* who) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError(std::string(who) + ": alpha must be finite and positive");
  }
}

void require_p(double p, const char* who) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw DomainError(std::string(who) + ": p must lie in (1, inf)");
  }
}

// log(c1 a_m + c2 alpha^m + c0) with a_m = alpha + ... + alpha^(m-1). For
// alpha > 1 the factor alpha^m is pulled out so nothing overflows.
double log_affine(double alpha, int m, double c1, double c2, double c0) {
  const KernelSpec spec(alpha, m);
  if (alpha <= 1.0 || spec.unit()) {
    return std::log(c1 * spec.a() + c2 * std::pow(alpha, m) + c0);
  }
  const double log_alpha = std::log(alpha);
  const double a_scaled = -std::expm1((1.0 - m) * log_alpha) / (alpha - 1.0);
  return m * log_alpha + std::log(c1 * a_scaled + c2 + c0 * std::exp(-m * log_alpha));
}

}  // namespace

NormSandwich norm_sandwich(double alpha, const LpContext& ctx) {
  require_alpha(alpha, "norm_sandwich");
  const double q = ctx.q();
  const double pc = ctx.p_conj();
  NormSandwich s{alpha, ctx, 0.0, 0.0, 0.0, 0.0};
  s.lower = std::pow(alpha * q + 1.0, -1.0 / q);
  s.upper_holder = std::pow(alpha * q / pc + 1.0, -1.0 / q);
  s.upper_beta = std::pow(alpha * beta(pc / q + 1.0, alpha), 1.0 / pc);
  s.upper = std::min(s.upper_holder, s.upper_beta);
  return s;
}

double holder_modulus(double alpha, double beta_, const LpContext& ctx) {
  if (!(alpha >= 0.0) || !(beta_ >= 0.0)) {
    throw DomainError("holder_modulus: alpha and beta must be nonnegative");
  }
  const double d = std::abs(alpha - beta_);
  if (d == 0.0) return 0.0;
  const double pc = ctx.p_conj();
  const double q = ctx.q();
  return std::pow(d, 1.0 / pc) * std::exp(log_gamma(q / pc + 1.0) / q);
}

UpperBoundChoice preferred_upper_bound(const LpContext& ctx) {
  const double q = ctx.q();
  const double pc = ctx.p_conj();
  if (std::abs(q - pc) <= 1e-10 * std::max(q, pc)) return UpperBoundChoice::equal;
  return q > pc ? UpperBoundChoice::holder : UpperBoundChoice::beta;
}

const char* to_string(UpperBoundChoice choice) {
  switch (choice) {
    case UpperBoundChoice::holder: return "holder";
    case UpperBoundChoice::beta: return "beta";
    case UpperBoundChoice::equal: return "equal";
  }
  return "?";
}

double log_iterate_norm_upper(double alpha, int n, double p) {
  require_alpha(alpha, "iterate_norm_upper");
  require_p(p, "iterate_norm_upper");
  if (n < 1) throw DomainError("iterate_norm_upper: n must be >= 1");
  return KernelSpec(alpha, n).log_b() - log_affine(alpha, n, p, 1.0, 1.0) / p;
}

double iterate_norm_upper(double alpha, int n, double p) {
  return std::exp(log_iterate_norm_upper(alpha, n, p));
}

double log_iterate_norm_lower(double alpha, int n, double p) {
  require_alpha(alpha, "iterate_norm_lower");
  require_p(p, "iterate_norm_lower");
  if (n < 2) throw DomainError("iterate_norm_lower: n must be >= 2");
  const double m = (n - 1) * alpha;
  return std::log(m) + KernelSpec(alpha, n).log_b() - log_affine(alpha, n, p, p, 1.0) / p +
         log_gamma(m) + log_gamma(n) - log_gamma(m + n);
}

double iterate_norm_lower(double alpha, int n, double p) {
  return std::exp(log_iterate_norm_lower(alpha, n, p));
}

double log_constant_orbit_norm(double alpha, int n, double p) {
  require_alpha(alpha, "constant_orbit_norm");
  require_p(p, "constant_orbit_norm");
  if (n < 1) throw DomainError("constant_orbit_norm: n must be >= 1");
  return KernelSpec(alpha, n + 1).log_b() - log_affine(alpha, n + 1, p, 0.0, 1.0) / p;
}

double log_iterate_norm_floor(double alpha, int n, double p) {
  double lower = log_constant_orbit_norm(alpha, n, p);
  if (n >= 2) lower = std::max(lower, log_iterate_norm_lower(alpha, n, p));
  if (alpha < 1.0 && !QParams(alpha).is_unit()) lower = std::max(lower, n * std::log1p(-alpha));
  return lower;
}

const char* to_string(GrowthRegime regime) {
  switch (regime) {
    case GrowthRegime::geometric: return "geometric";
    case GrowthRegime::factorial: return "factorial";
    case GrowthRegime::gaussian: return "gaussian";
  }
  return "?";
}

double regime_scale(GrowthRegime regime, int n) {
  switch (regime) {
    case GrowthRegime::geometric: return n;
    case GrowthRegime::factorial: return n * std::log(static_cast<double>(n));
    case GrowthRegime::gaussian: return static_cast<double>(n) * n;
  }
  return 1.0;
}

GrowthTrend growth_trend(double alpha, double p, int n_max) {
  require_alpha(alpha, "growth_trend");
  require_p(p, "growth_trend");
  if (n_max < 10) throw DomainError("growth_trend: n_max must be >= 10");

  GrowthTrend t{};
  t.alpha = alpha;
  t.p = p;
  t.n_max = n_max;
  if (QParams(alpha).is_unit()) {
    t.regime = GrowthRegime::factorial;
    t.target = -1.0;
    t.tolerance = 0.15;
  } else if (alpha < 1.0) {
    t.regime = GrowthRegime::geometric;
    t.target = std::log1p(-alpha);
    t.tolerance = 0.10;
  } else {
    t.regime = GrowthRegime::gaussian;
    t.target = -0.5 * std::log(alpha);
    t.tolerance = 0.10;
  }

  for (int n = 2; n <= n_max; ++n) {
    t.n.push_back(n);
    t.log_lower.push_back(log_iterate_norm_floor(alpha, n, p));
    t.log_upper.push_back(log_iterate_norm_upper(alpha, n, p));
  }

  const double scale = regime_scale(t.regime, n_max);
  t.normalized_lower = t.log_lower.back() / scale;
  t.normalized_upper = t.log_upper.back() / scale;
  const double window = t.tolerance * std::abs(t.target);
  t.lower_within = std::abs(t.normalized_lower - t.target) <= window;
  t.upper_within = std::abs(t.normalized_upper - t.target) <= window;

  // For the geometric regime the leading term is n itself, so the basis
  // drops the separate linear column.
  const bool geometric = t.regime == GrowthRegime::geometric;
  const int cols = geometric ? 3 : 4;
  const int rows = static_cast<int>(t.n.size());
  Eigen::MatrixXd a(rows, cols);
  Eigen::VectorXd y(rows);
  for (int r = 0; r < rows; ++r) {
    const int n = t.n[r];
    int c = 0;
    a(r, c++) = regime_scale(t.regime, n);
    if (!geometric) a(r, c++) = n;
    a(r, c++) = std::log(static_cast<double>(n));
    a(r, c++) = 1.0;
    y[r] = t.log_upper[r];
  }
  t.fitted_leading = a.colPivHouseholderQr().solve(y)[0];
  return t;
}

}  // namespace volterra
