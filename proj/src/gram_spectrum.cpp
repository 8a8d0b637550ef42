#include "volterra/gram_spectrum.hpp"

#include "volterra/compensated.hpp"
#include "volterra/errors.hpp"
#include "volterra/transform.hpp"

#include <boost/multiprecision/float128.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace volterra {

namespace {

using Quad = boost::multiprecision::float128;

constexpr double kTailTolerance = 1e-14;
constexpr int kMaxTerms = 100000;

// eps and 1 - eps kept separately: for small alpha, 1 - eps = alpha/(1+alpha)
// would lose digits if formed by subtraction.
struct SeriesParams {
  Quad eps;
  Quad one_minus_eps;
};

SeriesParams from_alpha(double alpha) {
  if (!(alpha > 0.0)) throw DomainError("H series: alpha must be positive");
  if (std::isinf(alpha)) return {Quad(0), Quad(1)};
  const Quad a(alpha);
  return {1 / (1 + a), a / (1 + a)};
}

SeriesParams from_eps(double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) throw DomainError("H series: eps must lie in [0, 1)");
  const Quad e(eps);
  return {e, 1 - e};
}

struct SeriesSum {
  Quad value;
  double tail;
  int terms;
};

// sum_k (-w)^k / (k! prod_{j<=k} (j - eps)). With fixed_terms < 0 the sum
// stops once the geometric tail bound drops below kTailTolerance.
SeriesSum value_series(const SeriesParams& s, const Quad& w, int fixed_terms = -1) {
  using boost::multiprecision::abs;
  CompensatedSum<Quad> sum;
  Quad term(1);
  sum += term;
  const Quad abs_w = abs(w);
  for (int k = 1; k < kMaxTerms; ++k) {
    term *= -w / (k * ((k - 1) + s.one_minus_eps));
    sum += term;
    if (fixed_terms >= 0) {
      if (k + 1 >= fixed_terms) return {sum.value(), 0.0, k + 1};
      continue;
    }
    // |t_{j+1} / t_j| <= |w| / ((j+1) j) <= r for every j >= k + 1.
    const Quad r = abs_w / ((k + 2.0) * (k + 1.0));
    if (r < 0.5) {
      const Quad next = abs(term) * abs_w / ((k + 1) * (k + s.one_minus_eps));
      const double tail = static_cast<double>(next / (1 - r));
      if (tail <= kTailTolerance) return {sum.value(), tail, k + 1};
    }
  }
  throw ConvergenceError("H series: term limit reached", static_cast<double>(sum.value()));
}

// Derivative: sum_{k>=1} (-1)^k w^(k-1) / ((k-1)! prod_{j<=k} (j - eps)).
Quad derivative_series(const SeriesParams& s, const Quad& w) {
  using boost::multiprecision::abs;
  CompensatedSum<Quad> sum;
  Quad term = -1 / s.one_minus_eps;
  sum += term;
  const Quad abs_w = abs(w);
  for (int k = 1; k < kMaxTerms; ++k) {
    term *= -w / (k * (k + s.one_minus_eps));
    sum += term;
    const Quad r = abs_w / ((k + 2.0) * (k + 2.0));
    if (r < 0.5) {
      const Quad next = abs(term) * abs_w / ((k + 1) * (k + 1 + s.one_minus_eps));
      if (static_cast<double>(next / (1 - r)) <= kTailTolerance) return sum.value();
    }
  }
  throw ConvergenceError("H' series: term limit reached", static_cast<double>(sum.value()));
}

double h_value(const SeriesParams& s, double z) {
  return static_cast<double>(value_series(s, Quad(z)).value);
}

double h_derivative(const SeriesParams& s, double z) {
  return static_cast<double>(derivative_series(s, Quad(z)));
}

// Safeguarded Newton on a sign-change bracket [lo, hi] in z.
double refine_zero(const SeriesParams& s, double lo, double hi) {
  double f_lo = h_value(s, lo);
  double z = 0.5 * (lo + hi);
  for (int iter = 0; iter < 400; ++iter) {
    const double f = h_value(s, z);
    if (f == 0.0) return z;
    if ((f < 0.0) == (f_lo < 0.0)) {
      lo = z;
      f_lo = f;
    } else {
      hi = z;
    }
    const double df = h_derivative(s, z);
    double next = z - f / df;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double scale = std::max(1.0, std::abs(df) * z);
    if (std::abs(next - z) <= 4.0 * std::numeric_limits<double>::epsilon() * z ||
        hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
      if (std::abs(h_value(s, next)) <= 1e-12 * scale) return next;
      throw ConvergenceError("find_zeros: bracket collapsed without a root", next);
    }
    z = next;
  }
  throw ConvergenceError("find_zeros: refinement iteration limit", z);
}

struct ScanResult {
  std::vector<std::pair<double, double>> brackets;  // in z
  double end_sqrt;                                  // where the scan stopped
};

// Walks sqrt(z) from 0 collecting sign-change brackets until `count` are
// found or the horizon passes.
ScanResult scan(const SeriesParams& s, double alpha, int count, double refine,
                double sqrt_limit) {
  const double floor_sqrt =
      std::isinf(alpha) ? 1.0 : std::min(1.0, std::sqrt(alpha) / (1.0 + alpha));
  const double max_step = std::numbers::pi / 80.0 / refine;
  ScanResult result{{}, 0.0};
  double s_prev = 0.0;
  double f_prev = 1.0;  // H(0) = 1
  while (s_prev < sqrt_limit) {
    const double step = std::min(max_step, 0.05 / refine * std::max(s_prev, floor_sqrt));
    const double s_next = s_prev + step;
    const double f_next = h_value(s, s_next * s_next);
    if (f_next == 0.0 || (f_next < 0.0) != (f_prev < 0.0)) {
      result.brackets.emplace_back(s_prev * s_prev, s_next * s_next);
      if (static_cast<int>(result.brackets.size()) == count) {
        result.end_sqrt = s_next;
        return result;
      }
      if (f_next == 0.0) {
        // Step past an exact zero so the next bracket starts cleanly.
        f_prev = -f_prev;
        s_prev = s_next;
        continue;
      }
    }
    s_prev = s_next;
    f_prev = f_next;
  }
  result.end_sqrt = s_prev;
  return result;
}

std::vector<double> refine_all(const SeriesParams& s,
                               const std::vector<std::pair<double, double>>& brackets) {
  std::vector<double> zeros;
  for (const auto& [lo, hi] : brackets) {
    if (h_value(s, hi) == 0.0) {
      zeros.push_back(hi);
    } else {
      zeros.push_back(refine_zero(s, lo, hi));
    }
  }
  return zeros;
}

}  // namespace

double eval_H(double alpha, double z) { return h_value(from_alpha(alpha), z); }

double eval_H_derivative(double alpha, double z) {
  return h_derivative(from_alpha(alpha), z);
}

double eval_H_eps(double eps, double z) { return h_value(from_eps(eps), z); }

double eval_H_eps_derivative(double eps, double z) {
  return h_derivative(from_eps(eps), z);
}

TruncatedSeries::TruncatedSeries(double alpha, double scale, double step)
    : alpha_(alpha), scale_(scale), step_(step), terms_(0), tail_bound_(0.0) {
  if (!(step > 0.0)) throw DomainError("TruncatedSeries: step must be positive");
  const auto sum = value_series(from_alpha(alpha), Quad(scale));
  terms_ = sum.terms;
  tail_bound_ = sum.tail;
}

double TruncatedSeries::operator()(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("TruncatedSeries: x outside [0, 1]");
  const Quad w = Quad(scale_) * boost::multiprecision::pow(Quad(x), Quad(step_));
  return static_cast<double>(value_series(from_alpha(alpha_), w, terms_).value);
}

Eigen::VectorXd TruncatedSeries::coefficients() const {
  const auto s = from_alpha(alpha_);
  Eigen::VectorXd c(terms_);
  Quad term(1);
  c[0] = 1.0;
  for (int k = 1; k < terms_; ++k) {
    term *= -Quad(scale_) / (k * ((k - 1) + s.one_minus_eps));
    c[k] = static_cast<double>(term);
  }
  return c;
}

std::vector<double> find_zeros(double alpha, int count) {
  if (count < 1) throw DomainError("find_zeros: count must be >= 1");
  const auto s = from_alpha(alpha);
  const double alpha_floor = std::isinf(alpha) ? 1.0 : std::min(alpha, 1.0);
  const double z_max = 2.0 * (std::numbers::pi * std::numbers::pi / 16.0) *
                       (1.0 + 2.0 * count) * (1.0 + 2.0 * count) *
                       std::max(1.0, 1.0 / alpha_floor);
  const double sqrt_limit = std::sqrt(z_max);

  const auto coarse = scan(s, alpha, count, 1.0, sqrt_limit);
  if (static_cast<int>(coarse.brackets.size()) < count) {
    throw SearchHorizonError("find_zeros: found only " +
                                 std::to_string(coarse.brackets.size()) + " of " +
                                 std::to_string(count) + " zeros below z = " +
                                 std::to_string(z_max),
                             refine_all(s, coarse.brackets));
  }
  // Recount on a ten times finer scan up to where the coarse scan stopped.
  const auto fine = scan(s, alpha, count + 1, 10.0, coarse.end_sqrt);
  const auto& brackets =
      fine.brackets.size() > coarse.brackets.size() ? fine.brackets : coarse.brackets;
  auto zeros = refine_all(s, brackets);
  zeros.resize(count);
  if (!std::is_sorted(zeros.begin(), zeros.end()) ||
      std::adjacent_find(zeros.begin(), zeros.end()) != zeros.end()) {
    throw Error("find_zeros: refined zeros are not strictly increasing");
  }
  return zeros;
}

GramEigenpair gram_eigenpair(double alpha, int n) {
  if (!(alpha > 0.0) || std::isinf(alpha)) {
    throw DomainError("gram_eigenpair: alpha must be finite and positive");
  }
  if (n < 0) throw DomainError("gram_eigenpair: n must be nonnegative");
  const double h = find_zeros(alpha, n + 1)[n];
  const double eigenvalue = alpha / ((1.0 + alpha) * (1.0 + alpha) * h);
  return {n, h, eigenvalue, TruncatedSeries(alpha, h, (1.0 + alpha) / alpha)};
}

double gram_residual(double alpha, int n, int grid) {
  const auto pair = gram_eigenpair(alpha, n);
  const auto f = Grid::sample(grid, pair.eigenfunction);
  const auto gram = apply_T_adjoint(alpha, apply_T(alpha, f));
  return lp_norm(gram - pair.eigenvalue * f, 2.0) / lp_norm(f, 2.0);
}

double norm_22(double alpha) {
  if (!(alpha > 0.0) || std::isinf(alpha)) {
    throw DomainError("norm_22: alpha must be finite and positive");
  }
  const double h0 = find_zeros(alpha, 1).front();
  return std::sqrt(alpha / h0) / (1.0 + alpha);
}

double small_alpha_expansion(double alpha) {
  if (!(alpha > 0.0 && alpha <= 0.1)) {
    throw DomainError("small_alpha_expansion: alpha must lie in (0, 0.1]");
  }
  return 1.0 - 0.75 * alpha;
}

double small_alpha_ratio(double alpha) {
  return std::abs(norm_22(alpha) - small_alpha_expansion(alpha)) / (alpha * alpha);
}

PerturbationGap perturbation_gap(double eps, double z) {
  if (!(eps > 0.0 && eps <= 0.125)) {
    throw DomainError("perturbation_gap: eps must lie in (0, 1/8]");
  }
  const double gap = std::abs(eval_H_eps(eps, z) - eval_H_eps(0.0, z));
  return {gap, 5.0 * eps * std::exp(std::abs(z))};
}

}  // namespace volterra
