#include "volterra/kernel.hpp"

#include "volterra/compensated.hpp"
#include "volterra/errors.hpp"
#include "volterra/quadrature.hpp"
#include "volterra/special_fn.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace volterra {

namespace {

using Extended = boost::multiprecision::cpp_bin_float_50;

constexpr double kRoundoffLimit = 1e-10;
constexpr double kRangeSlack = 1e-6;

// log|1 - alpha^k|, stable for large k on both sides of alpha = 1.
double log_abs_one_minus_pow(double log_alpha, int k) {
  const double e = k * log_alpha;
  if (e > 0.0) return e + std::log(-std::expm1(-e));
  return std::log(-std::expm1(e));
}

double one_minus_pow(double alpha, int k) {
  return -std::expm1(k * std::log(alpha));
}

Extended one_minus_pow(const Extended& alpha, int k) {
  return 1 - pow(alpha, k);
}

template <typename Real>
struct AlternatingSum {
  Real value;
  Real magnitude;  // sum of |terms|
};

// sum_{k<n} (-1)^k [n-1 choose k]_alpha alpha^C(k,2) z^(e_k), z in (0, 1].
template <typename Real>
AlternatingSum<Real> closed_form_sum(double alpha_d, int n, double z_d) {
  using std::abs;
  using std::exp;
  using std::log;
  using std::pow;
  const Real alpha(alpha_d);
  const Real log_z = log(Real(z_d));
  const int m = n - 1;
  CompensatedSum<Real> sum;
  Real magnitude(0);
  Real binom(1);        // [m choose k]_alpha
  Real alpha_pow(1);    // alpha^C(k,2)
  Real exponent(0);     // e_k
  Real inv_alpha_k(1);  // alpha^-k
  for (int k = 0; k <= m; ++k) {
    if (k > 0) {
      binom *= one_minus_pow(alpha, m - k + 1) / one_minus_pow(alpha, k);
      alpha_pow *= pow(alpha, k - 1);
      inv_alpha_k /= alpha;
      exponent += inv_alpha_k;
    }
    const Real term = binom * alpha_pow * exp(exponent * log_z);
    magnitude += abs(term);
    sum += (k % 2 == 0) ? term : Real(-term);
  }
  return {sum.value(), magnitude};
}

void check_unit_interval(double z, const char* who) {
  if (!(z >= 0.0 && z <= 1.0)) {
    throw DomainError(std::string(who) + ": z must lie in [0, 1], got " +
                      std::to_string(z));
  }
}

double accept_range(double value, int n, double z) {
  if (value < -kRangeSlack || value > 1.0 + kRangeSlack || !std::isfinite(value)) {
    throw NumericalInstability("g_closed: value " + std::to_string(value) +
                               " outside [0, 1] at n=" + std::to_string(n) +
                               ", z=" + std::to_string(z));
  }
  return std::clamp(value, 0.0, 1.0);
}

// Barycentric interpolation on the Gauss-Legendre nodes of one panel.
class PanelInterpolator {
 public:
  explicit PanelInterpolator(const Eigen::VectorXd& nodes) : nodes_(nodes) {
    const auto m = nodes.size();
    weights_.resize(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      double w = 1.0;
      for (Eigen::Index j = 0; j < m; ++j) {
        if (j != i) w *= nodes[i] - nodes[j];
      }
      weights_[i] = 1.0 / w;
    }
  }

  // xi in reference coordinates [-1, 1]; values are the panel's samples.
  double operator()(double xi, const double* values) const {
    double num = 0.0;
    double den = 0.0;
    for (Eigen::Index i = 0; i < nodes_.size(); ++i) {
      const double d = xi - nodes_[i];
      if (d == 0.0) return values[i];
      const double c = weights_[i] / d;
      num += c * values[i];
      den += c;
    }
    return num / den;
  }

 private:
  Eigen::VectorXd nodes_;
  Eigen::VectorXd weights_;
};

// Tabulates phi_k(t) = g_k(e^-t) on `panels` equal panels of [0, t_end] and
// returns phi_n(t_end).
class SmoothingCascade {
 public:
  SmoothingCascade(double alpha, int n, double t_end, int panels,
                   const GaussLegendreRule& rule)
      : alpha_(alpha),
        n_(n),
        t_end_(t_end),
        panels_(panels),
        h_(t_end / panels),
        rule_(rule),
        interp_(rule.nodes),
        m_(rule.size()) {}

  double run() const {
    std::vector<double> phi(static_cast<std::size_t>(panels_) * m_, 1.0);
    std::vector<double> next(phi.size());
    for (int k = 1; k < n_ - 1; ++k) {
      const double rate = kernel_rate(alpha_, k);
      for (int p = 0; p < panels_; ++p) {
        for (int i = 0; i < m_; ++i) {
          next[p * m_ + i] = smooth(phi, rate, node(p, i));
        }
      }
      phi.swap(next);
    }
    return smooth(phi, kernel_rate(alpha_, n_ - 1), t_end_);
  }

 private:
  static constexpr double kWindow = 36.0;  // e^-36 < 3e-16
  static constexpr double kChunk = 4.0;    // rate * chunk length

  double node(int p, int i) const {
    return h_ * (p + 0.5 * (rule_.nodes[i] + 1.0));
  }

  double interpolate(const std::vector<double>& phi, double s) const {
    int p = std::clamp(static_cast<int>(s / h_), 0, panels_ - 1);
    const double xi = 2.0 * (s - p * h_) / h_ - 1.0;
    return interp_(xi, phi.data() + static_cast<std::size_t>(p) * m_);
  }

  // rate * int_{max(0, tau - 36/rate)}^{tau} e^{-rate (tau - s)} phi(s) ds
  double smooth(const std::vector<double>& phi, double rate, double tau) const {
    const double lo = std::max(0.0, tau - kWindow / rate);
    double total = 0.0;
    int p = std::clamp(static_cast<int>(lo / h_), 0, panels_ - 1);
    for (; p < panels_ && p * h_ < tau; ++p) {
      const double a = std::max(lo, p * h_);
      const double b = std::min(tau, (p + 1) * h_);
      if (b <= a) continue;
      const bool whole = (a == p * h_) && (b == (p + 1) * h_);
      if (whole && rate * h_ <= kChunk) {
        double s = 0.0;
        for (int i = 0; i < m_; ++i) {
          const double x = node(p, i);
          s += rule_.weights[i] * std::exp(-rate * (tau - x)) * phi[p * m_ + i];
        }
        total += 0.5 * h_ * s;
        continue;
      }
      const int chunks = std::max(1, static_cast<int>(std::ceil(rate * (b - a) / kChunk)));
      const double len = (b - a) / chunks;
      for (int c = 0; c < chunks; ++c) {
        const double ca = a + c * len;
        total += rule_.integrate(
            [&](double s) {
              return std::exp(-rate * (tau - s)) * interpolate(phi, s);
            },
            ca, ca + len);
      }
    }
    return rate * total;
  }

  double alpha_;
  int n_;
  double t_end_;
  int panels_;
  double h_;
  const GaussLegendreRule& rule_;
  PanelInterpolator interp_;
  int m_;
};

}  // namespace

KernelSpec::KernelSpec(double alpha, int n)
    : alpha_(alpha), n_(n), a_(0.0), b_(1.0), log_b_(0.0), unit_(false) {
  const QParams q(alpha);
  if (n < 1) throw DomainError("KernelSpec: n must be >= 1");
  unit_ = q.is_unit();
  if (unit_) {
    a_ = n - 1.0;
    log_b_ = -log_gamma(static_cast<double>(n));
  } else {
    const double log_alpha = std::log(alpha);
    // a_n = alpha (1 - alpha^(n-1)) / (1 - alpha)
    a_ = alpha * std::expm1((n - 1) * log_alpha) / std::expm1(log_alpha);
    const double log_one_minus_alpha = std::log(std::abs(1.0 - alpha));
    for (int k = 1; k < n; ++k) {
      log_b_ += log_one_minus_alpha - log_abs_one_minus_pow(log_alpha, k);
    }
  }
  b_ = std::exp(log_b_);
}

KernelSpec make_kernel_spec(double alpha, int n) { return KernelSpec(alpha, n); }

double kernel_rate(double alpha, int k) {
  double rate = 0.0;
  double inv = 1.0;
  for (int i = 1; i <= k; ++i) {
    inv /= alpha;
    rate += inv;
  }
  return rate;
}

double g_closed(const KernelSpec& spec, double z) {
  check_unit_interval(z, "g_closed");
  const int n = spec.n();
  if (n == 1 || z == 0.0) return 1.0;
  if (spec.unit()) return std::pow(1.0 - z, n - 1);

  constexpr double kDoubleUnit = std::numeric_limits<double>::epsilon();
  const auto fast = closed_form_sum<double>(spec.alpha(), n, z);
  if ((n + 2) * kDoubleUnit * fast.magnitude <= kRoundoffLimit) {
    return accept_range(fast.value, n, z);
  }
  const auto slow = closed_form_sum<Extended>(spec.alpha(), n, z);
  const Extended bound = (n + 2) * std::numeric_limits<Extended>::epsilon() * slow.magnitude;
  if (bound > kRoundoffLimit) {
    throw NumericalInstability("g_closed: cancellation too severe at n=" +
                               std::to_string(n));
  }
  return accept_range(slow.value.convert_to<double>(), n, z);
}

double g_recursive(const KernelSpec& spec, double z, int quad_points) {
  check_unit_interval(z, "g_recursive");
  if (quad_points < 64) throw DomainError("g_recursive: quad_points must be >= 64");
  const int n = spec.n();
  if (n == 1 || z == 0.0) return 1.0;
  if (z == 1.0) return 0.0;

  static const GaussLegendreRule rule = gauss_legendre(16);
  const double t_end = -std::log(z);
  const double tolerance = 1e-9 * (n - 1);
  int panels = std::max(1, quad_points / rule.size());
  double previous = SmoothingCascade(spec.alpha(), n, t_end, panels, rule).run();
  double change = std::numeric_limits<double>::infinity();
  for (int refinement = 0; refinement < 10; ++refinement) {
    panels *= 2;
    const double current = SmoothingCascade(spec.alpha(), n, t_end, panels, rule).run();
    change = std::abs(current - previous);
    if (change <= tolerance) return current;
    previous = current;
  }
  throw AccuracyError("g_recursive: panel refinement did not converge", previous, change);
}

double g_value(const KernelSpec& spec, double z) {
  try {
    return g_closed(spec, z);
  } catch (const NumericalInstability&) {
    return g_recursive(spec, z);
  }
}

double g_step_relation_residual(const KernelSpec& spec, double z) {
  const KernelSpec next(spec.alpha(), spec.n() + 1);
  const double alpha = spec.alpha();
  const double z_root = std::pow(z, 1.0 / alpha);
  const double lhs = g_closed(next, z);
  const double rhs = g_closed(spec, z) -
                     std::pow(alpha, spec.n() - 1) * z_root * g_closed(spec, z_root);
  return std::abs(lhs - rhs);
}

double kernel_K(const KernelSpec& spec, double x, double y) {
  if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0)) {
    throw DomainError("kernel_K: (x, y) must lie in [0, 1]^2");
  }
  const double alpha_n = std::pow(spec.alpha(), spec.n());
  if (x == 0.0) {
    // Only the n = 1 kernel is nonzero at the corner: 0^0 = 1.
    return (y == 0.0 && spec.n() == 1) ? 1.0 : 0.0;
  }
  const double log_x = std::log(x);
  const double cutoff = std::exp(alpha_n * log_x);
  if (y > cutoff) return 0.0;
  if (spec.n() == 1) return 1.0;
  const double arg = (y == 0.0) ? 0.0 : std::min(1.0, std::exp(std::log(y) - alpha_n * log_x));
  return std::exp(spec.log_b() + spec.a() * log_x) * g_value(spec, arg);
}

double kernel_lower_bound(const KernelSpec& spec, double z) {
  check_unit_interval(z, "kernel_lower_bound");
  if (spec.n() < 2) throw DomainError("kernel_lower_bound: needs n >= 2");
  const int m = spec.n() - 1;
  return std::pow(1.0 - std::pow(z, 1.0 / (m * spec.alpha())), m);
}

}  // namespace volterra
