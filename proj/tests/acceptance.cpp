// Acceptance checks: one line per criterion, exit status 1 if any fails.

#include "cli.hpp"

#include "volterra/bounds.hpp"
#include "volterra/gram_spectrum.hpp"
#include "volterra/oracle.hpp"
#include "volterra/point_spectrum.hpp"
#include "volterra/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace volterra;

namespace {

constexpr double pi = std::numbers::pi;

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int failures = 0;

void criterion(int id, const char* title, double time_limit_s, const std::function<Verdict()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v{false, ""};
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::string timing = fmt("%.2f s", secs);
  if (time_limit_s > 0.0) {
    timing += fmt(" (limit %.0f s)", time_limit_s);
    if (secs > time_limit_s) {
      v.pass = false;
      timing += " over time limit";
    }
  }
  if (!v.pass) ++failures;
  std::printf("%s criterion %2d  %s: %s; %s\n", v.pass ? "PASS" : "FAIL", id, title,
              v.detail.c_str(), timing.c_str());
  std::fflush(stdout);
}

Verdict invariant_verdict(std::initializer_list<const char*> names) {
  VerifyOptions options;
  bool pass = true;
  std::string detail;
  for (const char* name : names) {
    const auto r = run_invariant(name, options);
    pass = pass && r.pass;
    detail += fmt("%s%s %.2e (tol %.0e)", detail.empty() ? "" : ", ", name, r.max_residual, r.tolerance);
  }
  return {pass, detail};
}

std::string run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "volterra");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return std::to_string(code) + "\n" + out.str() + err.str();
}

}  // namespace

int main() {
  criterion(1, "L2 norm at alpha = 1 is 2/pi", 60.0, [] {
    const double exact_err = std::abs(norm_22(1.0) - 2.0 / pi);
    const double oracle_err = std::abs(largest_singular_value(discretize(1.0, 4096)) - norm_22(1.0));
    return Verdict{exact_err <= 1e-8 && oracle_err <= 1e-3,
                   fmt("|norm_22(1) - 2/pi| = %.2e (tol 1e-8), |oracle N=4096 - norm_22(1)| = %.2e (tol 1e-3)",
                       exact_err, oracle_err)};
  });

  criterion(2, "first zero of H at alpha = infinity", 1.0, [] {
    const double h = find_zeros(kAlphaInfinity, 1).front();
    const double err = std::abs(h - 1.445796);
    return Verdict{err <= 1e-5, fmt("h_0(inf) = %.10f, |h_0 - 1.445796| = %.2e (tol 1e-5)", h, err)};
  });

  criterion(3, "point spectrum and quasi-nilpotency", 300.0, [] {
    double worst = 0.0, radius = 0.0;
    for (double a : {0.3, 0.5, 0.7}) {
      const auto est = top_eigenvalues(discretize(a, 2048), 5);
      for (int n = 0; n < 5; ++n) worst = std::max(worst, std::abs(est.values[n] - eigenvalue(a, n)));
    }
    for (double a : {1.0, 1.5, 2.0}) radius = std::max(radius, spectral_radius(discretize(a, 2048)));
    return Verdict{worst <= 2e-3 && radius <= 5e-3,
                   fmt("max |oracle - alpha^n (1-alpha)| = %.2e (tol 2e-3), max spectral radius alpha >= 1 = %.2e (tol 5e-3)",
                       worst, radius)};
  });

  criterion(4, "eigenfunction residuals", 0.0, [] {
    double worst = 0.0;
    for (double a : {0.2, 0.5, 0.8}) {
      for (int n = 0; n <= 4; ++n) worst = std::max(worst, eigen_residual(a, n, 4096, 2.0));
    }
    return Verdict{worst <= 5e-3, fmt("max relative residual N=4096 = %.2e (tol 5e-3)", worst)};
  });

  criterion(5, "Gram spectrum at alpha = 1", 0.0, [] {
    const auto oracle = top_gram_eigenvalues(discretize(1.0, 4096), 4);
    double eig_err = 0.0;
    for (int n = 0; n < 4; ++n) {
      eig_err = std::max(eig_err, std::abs(oracle[n] - 4.0 / (pi * pi * (1 + 2 * n) * (1 + 2 * n))));
    }
    const auto pair = gram_eigenpair(1.0, 1);
    double fn_err = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double x = i / 100.0;
      fn_err = std::max(fn_err, std::abs(pair.eigenfunction(x) - std::cos(1.5 * pi * x)));
    }
    return Verdict{eig_err <= 1e-3 && fn_err <= 1e-6,
                   fmt("max |oracle - 4/(pi^2 (1+2n)^2)| = %.2e (tol 1e-3), max |f_1 - cos(3 pi x/2)| = %.2e (tol 1e-6)",
                       eig_err, fn_err)};
  });

  criterion(6, "small-alpha slope", 0.0, [] {
    const double s2 = (1.0 - norm_22(1e-2)) / 1e-2;
    const double s3 = (1.0 - norm_22(1e-3)) / 1e-3;
    const bool in = s2 >= 0.70 && s2 <= 0.80 && s3 >= 0.70 && s3 <= 0.80;
    const bool toward = std::abs(s3 - 0.75) < std::abs(s2 - 0.75);
    return Verdict{in && toward, fmt("(1 - norm)/alpha = %.6f at 1e-2, %.6f at 1e-3 (window [0.70, 0.80], approaching 0.75)", s2, s3)};
  });

  criterion(7, "large-alpha decay", 0.0, [] {
    std::vector<double> v;
    for (double a : {1e2, 1e3, 1e4}) v.push_back(norm_22(a) * std::sqrt(a));
    const double limit = 1.0 / std::sqrt(1.445796);
    bool in = true, toward = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
      in = in && v[i] >= 0.80 && v[i] <= 0.86;
      if (i > 0) toward = toward && std::abs(v[i] - limit) < std::abs(v[i - 1] - limit);
    }
    return Verdict{in && toward, fmt("norm * sqrt(alpha) = %.6f, %.6f, %.6f at 1e2, 1e3, 1e4 (window [0.80, 0.86], approaching %.6f)",
                                     v[0], v[1], v[2], limit)};
  });

  criterion(8, "norm bound sandwich and bound preference", 0.0, [] {
    double worst = 0.0;
    int disagreements = 0, points = 0;
    for (double a : {0.1, 0.5, 1.0, 2.0, 10.0}) {
      const auto m = discretize(a, 2048);
      for (double p : {1.5, 2.0, 3.0}) {
        for (double q : {1.5, 2.0, 3.0}) {
          const LpContext ctx(p, q);
          const auto s = norm_sandwich(a, ctx);
          const double est = pq_norm_estimate(m, ctx);
          worst = std::max({worst, s.lower - est, est - s.upper});
          const double gap = s.upper_beta - s.upper_holder;
          const auto choice = preferred_upper_bound(ctx);
          const bool agree = choice == UpperBoundChoice::equal ? std::abs(gap) <= 1e-10 * s.upper
                             : choice == UpperBoundChoice::holder ? gap > 0.0
                                                                  : gap < 0.0;
          disagreements += agree ? 0 : 1;
          ++points;
        }
      }
    }
    return Verdict{worst <= 2e-3 && disagreements == 0,
                   fmt("%d points, max excursion outside [lower, upper] = %.2e (tol 2e-3), preference disagreements = %d",
                       points, std::max(worst, 0.0), disagreements)};
  });

  criterion(9, "iterated kernel identities", 120.0, [] {
    return invariant_verdict({"kernel.closed_vs_recursive", "kernel.semigroup", "kernel.lower_bound",
                              "kernel.step_relation", "kernel.two_term_recursion"});
  });

  criterion(10, "iterate growth", 0.0, [] {
    bool pass = true;
    std::string detail;
    const struct { double alpha; int n_max; } cases[] = {{0.5, 50}, {1.0, 50}, {2.0, 40}};
    for (const auto& c : cases) {
      const auto t = growth_trend(c.alpha, 2.0, c.n_max);
      const bool ok = t.lower_within && t.upper_within;
      pass = pass && ok;
      detail += fmt("%salpha=%g n=%d %s: bracket [%.4f, %.4f] vs target %.4f +- %.0f%% -> %s (fitted leading %.4f)",
                    detail.empty() ? "" : "; ", c.alpha, c.n_max, to_string(t.regime),
                    t.normalized_lower, t.normalized_upper, t.target, 100 * t.tolerance,
                    ok ? "in" : "OUT", t.fitted_leading);
    }
    double worst = 0.0;
    for (double a : {0.5, 1.0, 2.0}) {
      const auto m = discretize(a, 2048);
      for (int n = 1; n <= 6; ++n) {
        const double est = iterate_matrix_norm(m, n, LpContext(2.0));
        const double lower = std::exp(log_iterate_norm_floor(a, n, 2.0));
        worst = std::max({worst, lower - est, est - iterate_norm_upper(a, n, 2.0)});
      }
    }
    pass = pass && worst <= 2e-3;
    detail += fmt("; oracle n<=6 max excursion outside bracket = %.2e (tol 2e-3)", std::max(worst, 0.0));
    return Verdict{pass, detail};
  });

  criterion(11, "q-series identity and perturbation bound", 0.0, [] {
    return invariant_verdict({"special_fn.q_series_identity", "gram_spectrum.perturbation_gap"});
  });

  criterion(12, "verify output is deterministic", 0.0, [] {
    const auto first = run_cli({"verify", "--jobs", "1"});
    const auto second = run_cli({"verify", "--jobs", "2"});
    const bool same = first == second;
    const bool exit_ok = first.rfind("0\n", 0) == 0;
    return Verdict{same && exit_ok, fmt("two runs %s (%zu bytes), exit status %c",
                                        same ? "byte-identical" : "DIFFER", first.size(), first[0])};
  });

  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
