#pragma once

#include "volterra/transform.hpp"

#include <vector>

namespace volterra {

/// Two-sided estimate of ||T_alpha||_{p,q}:
///   (alpha q + 1)^(-1/q) <= ||T_alpha|| <= min(upper_holder, upper_beta).
struct NormSandwich {
  double alpha;
  LpContext ctx;
  double lower;         // (alpha q + 1)^(-1/q)
  double upper_holder;  // (alpha q / p' + 1)^(-1/q)
  double upper_beta;    // (alpha B(p'/q + 1, alpha))^(1/p')
  double upper;         // min(upper_holder, upper_beta)
};

NormSandwich norm_sandwich(double alpha, const LpContext& ctx);

/// |alpha - beta|^(1/p') Gamma(q/p' + 1)^(1/q), an upper bound for
/// ||T_alpha - T_beta||_{p,q}.
double holder_modulus(double alpha, double beta, const LpContext& ctx);

enum class UpperBoundChoice { holder, beta, equal };

/// Which of the two upper bounds is smaller, decided from the exponents
/// alone: holder when q > p', beta when q < p', equal when q = p' (relative
/// tolerance 1e-10). The answer does not depend on alpha.
UpperBoundChoice preferred_upper_bound(const LpContext& ctx);

const char* to_string(UpperBoundChoice choice);

/// log of b_n (p a_n + alpha^n + 1)^(-1/p), an upper bound for
/// log ||T_alpha^n||_{p,p}. Evaluated without forming b_n or alpha^n.
double log_iterate_norm_upper(double alpha, int n, double p);
double iterate_norm_upper(double alpha, int n, double p);

/// log of the lower bound
///   (n-1) alpha b_n (p a_n + p alpha^n + 1)^(-1/p)
///     * Gamma((n-1) alpha) Gamma(n) / Gamma((n-1) alpha + n),
/// obtained by integrating the kernel lower bound against a power test
/// function. Requires n >= 2.
double log_iterate_norm_lower(double alpha, int n, double p);
double iterate_norm_lower(double alpha, int n, double p);

/// log ||T_alpha^n 1||_p = log b_{n+1} - log(p a_{n+1} + 1) / p. Exact,
/// since T_alpha maps x^s to x^(alpha (s+1)) / (s+1); a lower bound for
/// log ||T_alpha^n||_{p,p}.
double log_constant_orbit_norm(double alpha, int n, double p);

/// The largest of the available lower bounds on log ||T_alpha^n||_{p,p}:
/// the kernel bound (n >= 2), the constant orbit, and for alpha < 1 the
/// spectral radius bound n log(1 - alpha).
double log_iterate_norm_floor(double alpha, int n, double p);

enum class GrowthRegime {
  geometric,  // alpha < 1: log ||T^n|| ~ n log(1 - alpha)
  factorial,  // alpha = 1: log ||T^n|| ~ -n log n
  gaussian,   // alpha > 1: log ||T^n|| ~ -(log alpha / 2) n^2
};

const char* to_string(GrowthRegime regime);

/// Bracket on log ||T_alpha^n||_{p,p} for n = 2 .. n_max, normalized by the
/// leading term of its regime and compared to the limiting constant.
/// The lower end is log_iterate_norm_floor.
struct GrowthTrend {
  double alpha;
  double p;
  int n_max;
  GrowthRegime regime;
  double target;      // log(1 - alpha), -1, or -log(alpha) / 2
  double tolerance;   // relative window: 0.10, or 0.15 at alpha = 1
  std::vector<int> n;
  std::vector<double> log_lower;
  std::vector<double> log_upper;
  double normalized_lower;  // at n_max
  double normalized_upper;  // at n_max
  bool lower_within;
  bool upper_within;
  /// Leading coefficient of a least-squares fit of log_upper against the
  /// regime's leading term plus lower-order terms {n, log n, 1}.
  double fitted_leading;
};

/// Requires n_max >= 10.
GrowthTrend growth_trend(double alpha, double p, int n_max);

/// The leading term n, n log n, or n^2 used to normalize a regime.
double regime_scale(GrowthRegime regime, int n);

}  // namespace volterra
