#pragma once

#include "volterra/errors.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <string>

namespace volterra {

/// A function on [0, 1] sampled at the midpoints x_i = (i + 1/2) / N of a
/// uniform grid. Integrals use the midpoint weights 1/N, which sum to one.
template <typename Scalar>
class GridFunction {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  explicit GridFunction(Vector values) : values_(std::move(values)) {
    if (values_.size() < 2) {
      throw DomainError("GridFunction: need at least 2 samples");
    }
  }

  template <typename F>
  static GridFunction sample(int n_points, F&& f) {
    if (n_points < 2) throw DomainError("GridFunction: need at least 2 samples");
    Vector v(n_points);
    for (int i = 0; i < n_points; ++i) v[i] = f(node(i, n_points));
    return GridFunction(std::move(v));
  }

  static GridFunction constant(int n_points, Scalar c) {
    if (n_points < 2) throw DomainError("GridFunction: need at least 2 samples");
    return GridFunction(Vector::Constant(n_points, c));
  }

  static Scalar node(int i, int n_points) {
    return (Scalar(i) + Scalar(0.5)) / Scalar(n_points);
  }

  int size() const { return static_cast<int>(values_.size()); }
  Scalar node(int i) const { return node(i, size()); }
  Scalar cell_width() const { return Scalar(1) / Scalar(size()); }
  Vector weights() const { return Vector::Constant(size(), cell_width()); }

  const Vector& values() const { return values_; }
  Scalar operator[](int i) const { return values_[i]; }

 private:
  Vector values_;
};

using Grid = GridFunction<double>;

/// Exponents of an L^p -> L^q setting with their conjugates.
class LpContext {
 public:
  LpContext(double p, double q) : p_(p), q_(q) {
    if (!(p > 1.0) || !(q > 1.0) || !std::isfinite(p) || !std::isfinite(q)) {
      throw DomainError("LpContext: exponents must lie in (1, inf)");
    }
    p_conj_ = p / (p - 1.0);
    q_conj_ = q / (q - 1.0);
  }
  explicit LpContext(double p) : LpContext(p, p) {}

  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  double p_conj() const noexcept { return p_conj_; }
  double q_conj() const noexcept { return q_conj_; }

 private:
  double p_;
  double q_;
  double p_conj_;
  double q_conj_;
};

/// Position of an integration limit u in [0, 1] relative to the grid: `full`
/// cells lie entirely below u and `fraction` is the covered length of the
/// next cell.
template <typename Scalar>
struct CellCut {
  int full;
  Scalar fraction;
};

template <typename Scalar>
CellCut<Scalar> cell_cut(Scalar u, int n_points) {
  using std::floor;
  const Scalar h = Scalar(1) / Scalar(n_points);
  u = std::clamp(u, Scalar(0), Scalar(1));
  int full = static_cast<int>(floor(u * Scalar(n_points)));
  full = std::clamp(full, 0, n_points);
  Scalar fraction = u - Scalar(full) * h;
  fraction = std::clamp(fraction, Scalar(0), h);
  if (full == n_points) fraction = Scalar(0);
  return {full, fraction};
}

namespace detail {

// prefix[k] = h * sum_{j<k} f_j
template <typename Scalar>
typename GridFunction<Scalar>::Vector prefix_integrals(const GridFunction<Scalar>& f) {
  const int n = f.size();
  typename GridFunction<Scalar>::Vector prefix(n + 1);
  prefix[0] = Scalar(0);
  const Scalar h = f.cell_width();
  for (int j = 0; j < n; ++j) prefix[j + 1] = prefix[j] + h * f[j];
  return prefix;
}

// Integral of the piecewise-constant f over [0, u].
template <typename Scalar>
Scalar integral_below(const typename GridFunction<Scalar>::Vector& prefix,
                      const GridFunction<Scalar>& f, Scalar u) {
  const auto cut = cell_cut(u, f.size());
  Scalar value = prefix[cut.full];
  if (cut.full < f.size()) value += cut.fraction * f[cut.full];
  return value;
}

}  // namespace detail

/// (T_0 f)(x) = int_0^1 f, the alpha -> 0 member of the family.
template <typename Scalar>
GridFunction<Scalar> apply_T0(const GridFunction<Scalar>& f) {
  return GridFunction<Scalar>::constant(f.size(), f.values().sum() * f.cell_width());
}

/// (T_alpha f)(x_i) = int_0^{x_i^alpha} f for the piecewise-constant f.
template <typename Scalar>
GridFunction<Scalar> apply_T(Scalar alpha, const GridFunction<Scalar>& f) {
  using std::pow;
  if (!(alpha > Scalar(0))) throw DomainError("apply_T: alpha must be positive");
  const auto prefix = detail::prefix_integrals(f);
  typename GridFunction<Scalar>::Vector out(f.size());
  for (int i = 0; i < f.size(); ++i) {
    out[i] = detail::integral_below(prefix, f, Scalar(pow(f.node(i), alpha)));
  }
  return GridFunction<Scalar>(std::move(out));
}

/// (T*_alpha f)(x_i) = int_{x_i^(1/alpha)}^1 f.
template <typename Scalar>
GridFunction<Scalar> apply_T_adjoint(Scalar alpha, const GridFunction<Scalar>& f) {
  using std::pow;
  if (!(alpha > Scalar(0))) throw DomainError("apply_T_adjoint: alpha must be positive");
  const auto prefix = detail::prefix_integrals(f);
  const Scalar total = prefix[f.size()];
  typename GridFunction<Scalar>::Vector out(f.size());
  for (int i = 0; i < f.size(); ++i) {
    const Scalar u = pow(f.node(i), Scalar(1) / alpha);
    out[i] = total - detail::integral_below(prefix, f, u);
  }
  return GridFunction<Scalar>(std::move(out));
}

/// n successive applications of apply_T; O(n N).
template <typename Scalar>
GridFunction<Scalar> apply_T_iterate(Scalar alpha, GridFunction<Scalar> f, int n) {
  if (n < 1) throw DomainError("apply_T_iterate: n must be >= 1");
  for (int k = 0; k < n; ++k) f = apply_T(alpha, f);
  return f;
}

template <typename Scalar>
Scalar lp_norm(const GridFunction<Scalar>& f, double p) {
  using std::abs;
  using std::pow;
  if (!(p >= 1.0)) throw DomainError("lp_norm: p must be >= 1");
  const Scalar h = f.cell_width();
  Scalar sum(0);
  for (int i = 0; i < f.size(); ++i) sum += h * Scalar(pow(abs(f[i]), p));
  return pow(sum, Scalar(1.0 / p));
}

/// Weighted inner product sum_i w_i f_i g_i.
template <typename Scalar>
Scalar inner(const GridFunction<Scalar>& f, const GridFunction<Scalar>& g) {
  if (f.size() != g.size()) throw DomainError("inner: grid sizes differ");
  return f.values().dot(g.values()) * f.cell_width();
}

template <typename Scalar>
GridFunction<Scalar> operator-(const GridFunction<Scalar>& a, const GridFunction<Scalar>& b) {
  if (a.size() != b.size()) throw DomainError("GridFunction: grid sizes differ");
  return GridFunction<Scalar>(a.values() - b.values());
}

template <typename Scalar>
GridFunction<Scalar> operator*(Scalar c, const GridFunction<Scalar>& a) {
  return GridFunction<Scalar>(c * a.values());
}

}  // namespace volterra
