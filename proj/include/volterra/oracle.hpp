#pragma once

#include "volterra/transform.hpp"

#include <Eigen/Core>

#include <functional>
#include <vector>

namespace volterra {

/// N x N discretization of T_alpha on the midpoint grid. Entry (i, j) is
/// the length of cell j that lies inside the integration range of row i:
/// [0, x_i^alpha] for the lower orientation, [x_i^(1/alpha), 1] for the
/// upper one (the adjoint T*_alpha). Rows are stored as cell cuts, so apply
/// and apply_transpose cost O(N) and the dense matrix is built only on
/// request.
class OperatorMatrix {
 public:
  enum class Orientation { lower, upper };

  OperatorMatrix(double alpha, int n_points, Orientation orientation);

  double alpha() const noexcept { return alpha_; }
  int size() const noexcept { return n_; }
  Orientation orientation() const noexcept { return orientation_; }

  double entry(int i, int j) const;
  Eigen::MatrixXd dense() const;

  Eigen::VectorXd apply(const Eigen::VectorXd& f) const;
  Eigen::VectorXd apply_transpose(const Eigen::VectorXd& g) const;

  /// True when no row reaches past the diagonal, so the eigenvalues are the
  /// diagonal entries.
  bool lower_triangular() const;

 private:
  double alpha_;
  int n_;
  Orientation orientation_;
  std::vector<CellCut<double>> cuts_;
};

/// Discretization of T_alpha; alpha = 0 gives T_0 (every row integrates
/// over [0, 1]). Needs n_points >= 16.
OperatorMatrix discretize(double alpha, int n_points);

/// Discretization of T*_alpha f(x) = int_{x^(1/alpha)}^1 f.
OperatorMatrix discretize_adjoint(double alpha, int n_points);

/// A matrix-free linear map on R^N with its transpose. Composite operators
/// (differences, powers) are formed lazily from OperatorMatrix pieces.
class DiscreteOperator {
 public:
  using Map = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

  DiscreteOperator(int size, Map apply, Map apply_transpose);
  DiscreteOperator(const OperatorMatrix& m);  // NOLINT: implicit by design

  int size() const noexcept { return size_; }
  Eigen::VectorXd apply(const Eigen::VectorXd& f) const { return apply_(f); }
  Eigen::VectorXd apply_transpose(const Eigen::VectorXd& g) const {
    return apply_transpose_(g);
  }

 private:
  int size_;
  Map apply_;
  Map apply_transpose_;
};

DiscreteOperator difference(const DiscreteOperator& a, const DiscreteOperator& b);

/// n-fold composition, applied as n successive products.
DiscreteOperator power(const DiscreteOperator& a, int n);

/// Largest singular value by power iteration on A^T A. The grid weights are
/// uniform, so the weighted L^2 adjoint is the plain transpose and no
/// rescaling is needed. Relative tolerance 1e-10, at most 1e5 iterations;
/// throws ConvergenceError otherwise.
double largest_singular_value(const DiscreteOperator& a);

struct EigenvalueEstimate {
  std::vector<double> values;  // real parts, by decreasing magnitude
  bool complex_pair;           // some returned value has a nonzero imaginary part
};

/// The `count` (<= 8) largest-magnitude eigenvalues. Triangular matrices are
/// read off the diagonal; otherwise subspace iteration with Rayleigh-Ritz
/// extraction on a block of count + 4 vectors.
EigenvalueEstimate top_eigenvalues(const OperatorMatrix& m, int count);

/// Same quantity from a dense eigendecomposition; N <= 2048.
EigenvalueEstimate top_eigenvalues_dense(const OperatorMatrix& m, int count);

/// The `count` largest eigenvalues of the Gram matrix M^T M (the
/// discretized T*T), by symmetric subspace iteration.
std::vector<double> top_gram_eigenvalues(const DiscreteOperator& a, int count);

/// Largest eigenvalue magnitude of the discretization.
double spectral_radius(const OperatorMatrix& m);

/// ||A||_{p,q} by the nonlinear power method
///   f <- normalize_p(J_{p'}(A^T J_q(A f))),  J_r(v) = |v|^(r-1) sign v,
/// started from f = 1 and stopped when ||Af||_q / ||f||_p changes by less
/// than 1e-8 relatively. Throws ConvergenceError after 1e5 steps.
double pq_norm_estimate(const DiscreteOperator& a, const LpContext& ctx);

/// pq_norm_estimate of the n-fold composition of m.
double iterate_matrix_norm(const OperatorMatrix& m, int n, const LpContext& ctx);

}  // namespace volterra
