#include "volterra/oracle.hpp"

#include "volterra/errors.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>

namespace volterra {

namespace {

constexpr int kMaxIterations = 100000;

double weighted_norm(const Eigen::VectorXd& v, double p) {
  const double h = 1.0 / static_cast<double>(v.size());
  return std::pow(h * v.array().abs().pow(p).sum(), 1.0 / p);
}

Eigen::VectorXd duality_map(const Eigen::VectorXd& v, double r) {
  return v.array().sign() * v.array().abs().pow(r - 1.0);
}

// Deterministic start block: the first column is constant, the rest are
// low-frequency cosines, so every block has a component along the leading
// singular or eigen vectors of these positive operators.
Eigen::MatrixXd start_block(int n, int cols) {
  Eigen::MatrixXd q(n, cols);
  for (int i = 0; i < n; ++i) {
    const double x = (i + 0.5) / n;
    for (int c = 0; c < cols; ++c) q(i, c) = std::cos(c * 3.141592653589793 * x) + 0.1 * x;
  }
  return q;
}

void orthonormalize(Eigen::MatrixXd& q) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(q);
  q = qr.householderQ() * Eigen::MatrixXd::Identity(q.rows(), q.cols());
}

bool ritz_settled(const std::vector<double>& now, const std::vector<double>& before,
                  int count, double tol) {
  if (before.empty()) return false;
  for (int k = 0; k < count; ++k) {
    if (std::abs(now[k] - before[k]) > tol * std::max(std::abs(now[0]), 1e-300)) return false;
  }
  return true;
}

EigenvalueEstimate sorted_estimate(const Eigen::VectorXcd& eig, int count) {
  std::vector<std::complex<double>> v(eig.data(), eig.data() + eig.size());
  std::stable_sort(v.begin(), v.end(), [](auto a, auto b) { return std::abs(a) > std::abs(b); });
  EigenvalueEstimate out{{}, false};
  for (int k = 0; k < count && k < static_cast<int>(v.size()); ++k) {
    out.values.push_back(v[k].real());
    if (std::abs(v[k].imag()) > 1e-8 * std::max(std::abs(v[k]), 1e-300)) out.complex_pair = true;
  }
  return out;
}

}  // namespace

OperatorMatrix::OperatorMatrix(double alpha, int n_points, Orientation orientation)
    : alpha_(alpha), n_(n_points), orientation_(orientation) {
  if (n_points < 16) throw DomainError("discretize: n_points must be >= 16");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw DomainError("discretize: alpha must be finite and nonnegative");
  }
  if (orientation == Orientation::upper && alpha == 0.0) {
    throw DomainError("discretize_adjoint: alpha must be positive");
  }
  const double exponent = orientation == Orientation::lower ? alpha : 1.0 / alpha;
  cuts_.reserve(n_);
  for (int i = 0; i < n_; ++i) {
    cuts_.push_back(cell_cut(std::pow(Grid::node(i, n_), exponent), n_));
  }
}

double OperatorMatrix::entry(int i, int j) const {
  const double h = 1.0 / n_;
  const auto& c = cuts_.at(i);
  if (orientation_ == Orientation::lower) {
    if (j < c.full) return h;
    return j == c.full ? c.fraction : 0.0;
  }
  if (j > c.full) return h;
  return j == c.full ? h - c.fraction : 0.0;
}

Eigen::MatrixXd OperatorMatrix::dense() const {
  Eigen::MatrixXd m(n_, n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) m(i, j) = entry(i, j);
  }
  return m;
}

Eigen::VectorXd OperatorMatrix::apply(const Eigen::VectorXd& f) const {
  if (f.size() != n_) throw DomainError("OperatorMatrix::apply: size mismatch");
  const double h = 1.0 / n_;
  Eigen::VectorXd prefix(n_ + 1);
  prefix[0] = 0.0;
  for (int j = 0; j < n_; ++j) prefix[j + 1] = prefix[j] + h * f[j];
  Eigen::VectorXd out(n_);
  for (int i = 0; i < n_; ++i) {
    const auto& c = cuts_[i];
    const double cell = c.full < n_ ? f[c.full] : 0.0;
    const double below = prefix[c.full] + c.fraction * cell;
    out[i] = orientation_ == Orientation::lower ? below : prefix[n_] - below;
  }
  return out;
}

Eigen::VectorXd OperatorMatrix::apply_transpose(const Eigen::VectorXd& g) const {
  if (g.size() != n_) throw DomainError("OperatorMatrix::apply_transpose: size mismatch");
  const double h = 1.0 / n_;
  // Bucket the rows by the cell holding their cut.
  Eigen::VectorXd mass = Eigen::VectorXd::Zero(n_ + 1);
  Eigen::VectorXd partial = Eigen::VectorXd::Zero(n_ + 1);
  for (int i = 0; i < n_; ++i) {
    mass[cuts_[i].full] += g[i];
    partial[cuts_[i].full] += cuts_[i].fraction * g[i];
  }
  Eigen::VectorXd out(n_);
  if (orientation_ == Orientation::lower) {
    double above = mass[n_];  // rows whose cut lies beyond column j
    for (int j = n_ - 1; j >= 0; --j) {
      out[j] = h * above + partial[j];
      above += mass[j];
    }
  } else {
    double below = 0.0;
    for (int j = 0; j < n_; ++j) {
      out[j] = h * below + h * mass[j] - partial[j];
      below += mass[j];
    }
  }
  return out;
}

bool OperatorMatrix::lower_triangular() const {
  if (orientation_ != Orientation::lower) return false;
  for (int i = 0; i < n_; ++i) {
    const auto& c = cuts_[i];
    const int last = c.fraction > 0.0 ? c.full : c.full - 1;
    if (last > i) return false;
  }
  return true;
}

OperatorMatrix discretize(double alpha, int n_points) {
  return OperatorMatrix(alpha, n_points, OperatorMatrix::Orientation::lower);
}

OperatorMatrix discretize_adjoint(double alpha, int n_points) {
  return OperatorMatrix(alpha, n_points, OperatorMatrix::Orientation::upper);
}

DiscreteOperator::DiscreteOperator(int size, Map apply, Map apply_transpose)
    : size_(size), apply_(std::move(apply)), apply_transpose_(std::move(apply_transpose)) {}

DiscreteOperator::DiscreteOperator(const OperatorMatrix& m)
    : size_(m.size()),
      apply_([m](const Eigen::VectorXd& f) { return m.apply(f); }),
      apply_transpose_([m](const Eigen::VectorXd& g) { return m.apply_transpose(g); }) {}

DiscreteOperator difference(const DiscreteOperator& a, const DiscreteOperator& b) {
  if (a.size() != b.size()) throw DomainError("difference: sizes differ");
  return DiscreteOperator(
      a.size(),
      [a, b](const Eigen::VectorXd& f) -> Eigen::VectorXd { return a.apply(f) - b.apply(f); },
      [a, b](const Eigen::VectorXd& g) -> Eigen::VectorXd {
        return a.apply_transpose(g) - b.apply_transpose(g);
      });
}

DiscreteOperator power(const DiscreteOperator& a, int n) {
  if (n < 1) throw DomainError("power: n must be >= 1");
  return DiscreteOperator(
      a.size(),
      [a, n](const Eigen::VectorXd& f) {
        Eigen::VectorXd v = f;
        for (int k = 0; k < n; ++k) v = a.apply(v);
        return v;
      },
      [a, n](const Eigen::VectorXd& g) {
        Eigen::VectorXd v = g;
        for (int k = 0; k < n; ++k) v = a.apply_transpose(v);
        return v;
      });
}

double largest_singular_value(const DiscreteOperator& a) {
  Eigen::VectorXd v = start_block(a.size(), 1).col(0);
  v.normalize();
  double estimate = 0.0;
  for (int it = 0; it < kMaxIterations; ++it) {
    Eigen::VectorXd w = a.apply_transpose(a.apply(v));
    const double next = v.dot(w);
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    v = w / norm;
    if (it > 0 && std::abs(next - estimate) <= 1e-10 * std::abs(next)) {
      return std::sqrt(std::max(next, 0.0));
    }
    estimate = next;
  }
  throw ConvergenceError("largest_singular_value: iteration limit", std::sqrt(std::max(estimate, 0.0)));
}

EigenvalueEstimate top_eigenvalues(const OperatorMatrix& m, int count) {
  if (count < 1 || count > 8) throw DomainError("top_eigenvalues: count must lie in [1, 8]");
  if (m.lower_triangular()) {
    Eigen::VectorXcd diag(m.size());
    for (int i = 0; i < m.size(); ++i) diag[i] = m.entry(i, i);
    return sorted_estimate(diag, count);
  }
  const int block = std::min(count + 4, m.size());
  Eigen::MatrixXd q = start_block(m.size(), block);
  orthonormalize(q);
  std::vector<double> before;
  for (int it = 0; it < kMaxIterations; ++it) {
    Eigen::MatrixXd z(m.size(), block);
    for (int c = 0; c < block; ++c) z.col(c) = m.apply(q.col(c));
    if (it % 5 == 4) {
      const Eigen::MatrixXd h = q.transpose() * z;
      Eigen::EigenSolver<Eigen::MatrixXd> solver(h, false);
      auto estimate = sorted_estimate(solver.eigenvalues(), count);
      if (ritz_settled(estimate.values, before, count, 1e-12)) return estimate;
      before = estimate.values;
    }
    q = z;
    orthonormalize(q);
  }
  throw ConvergenceError("top_eigenvalues: iteration limit", before.empty() ? 0.0 : before[0]);
}

EigenvalueEstimate top_eigenvalues_dense(const OperatorMatrix& m, int count) {
  if (m.size() > 2048) throw DomainError("top_eigenvalues_dense: N must be <= 2048");
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m.dense(), false);
  return sorted_estimate(solver.eigenvalues(), count);
}

std::vector<double> top_gram_eigenvalues(const DiscreteOperator& a, int count) {
  if (count < 1 || count > 8) throw DomainError("top_gram_eigenvalues: count must lie in [1, 8]");
  const int block = std::min(count + 4, a.size());
  Eigen::MatrixXd q = start_block(a.size(), block);
  orthonormalize(q);
  std::vector<double> before;
  for (int it = 0; it < kMaxIterations; ++it) {
    Eigen::MatrixXd z(a.size(), block);
    for (int c = 0; c < block; ++c) z.col(c) = a.apply_transpose(a.apply(q.col(c)));
    const Eigen::MatrixXd h = q.transpose() * z;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (h + h.transpose()),
                                                          Eigen::EigenvaluesOnly);
    std::vector<double> now(solver.eigenvalues().data(),
                            solver.eigenvalues().data() + block);
    std::sort(now.begin(), now.end(), std::greater<>());
    now.resize(count);
    if (ritz_settled(now, before, count, 1e-12)) return now;
    before = now;
    q = z;
    orthonormalize(q);
  }
  throw ConvergenceError("top_gram_eigenvalues: iteration limit", before.empty() ? 0.0 : before[0]);
}

double spectral_radius(const OperatorMatrix& m) {
  return std::abs(top_eigenvalues(m, 1).values.front());
}

double pq_norm_estimate(const DiscreteOperator& a, const LpContext& ctx) {
  Eigen::VectorXd f = Eigen::VectorXd::Ones(a.size());
  double estimate = 0.0;
  for (int it = 0; it < kMaxIterations; ++it) {
    const Eigen::VectorXd g = a.apply(f);
    const double next = weighted_norm(g, ctx.q()) / weighted_norm(f, ctx.p());
    if (it > 0 && std::abs(next - estimate) < 1e-8 * std::abs(next)) return next;
    estimate = next;
    Eigen::VectorXd back = a.apply_transpose(duality_map(g, ctx.q()));
    back = duality_map(back, ctx.p_conj());
    const double norm = weighted_norm(back, ctx.p());
    if (norm == 0.0) return 0.0;
    f = back / norm;
  }
  throw ConvergenceError("pq_norm_estimate: no convergence after 1e5 steps", estimate);
}

double iterate_matrix_norm(const OperatorMatrix& m, int n, const LpContext& ctx) {
  return pq_norm_estimate(power(DiscreteOperator(m), n), ctx);
}

}  // namespace volterra
