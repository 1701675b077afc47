#pragma once

#include <functional>
#include <variant>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace mfc {

/// Square linear operator, either materialized (dense/sparse) or matrix-free.
class LinOp {
 public:
  using ApplyFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

  explicit LinOp(Eigen::MatrixXd A) : dim_(static_cast<int>(A.rows())), rep_(std::move(A)) {}
  explicit LinOp(Eigen::SparseMatrix<double> A)
      : dim_(static_cast<int>(A.rows())), rep_(std::move(A)) {}
  LinOp(int dim, ApplyFn apply) : dim_(dim), rep_(std::move(apply)) {}

  int dim() const { return dim_; }

  /// True when the matrix entries are available without probing.
  bool has_matrix() const { return !std::holds_alternative<ApplyFn>(rep_); }

  /// Materializes the operator as a dense matrix (only when has_matrix()).
  Eigen::MatrixXd dense() const;

  Eigen::VectorXd operator()(const Eigen::VectorXd& x) const;

 private:
  int dim_;
  std::variant<Eigen::MatrixXd, Eigen::SparseMatrix<double>, ApplyFn> rep_;
};

/// Matrix exponential by Pade approximation with scaling and squaring,
/// order selected from the standard 1-norm thresholds.
/// Throws std::runtime_error on non-finite input or overflow.
Eigen::MatrixXd expm_dense(const Eigen::MatrixXd& X);

struct PhiActionStats {
  int krylov_dim = 0;  // largest subspace dimension used
  int substeps = 0;
};

struct PhiActionResult {
  Eigen::VectorXd y;
  PhiActionStats stats;
};

struct PhiOptions {
  double krylov_tol = 1e-10;
  int dense_threshold = 400;  // dense path when dim <= this and matrix known
  int max_krylov_dim = 128;
  int max_substeps = 10000;
};

/// exp(tau X) v + tau phi1(tau X) w via the first n rows of the exponential
/// of the (n+1) x (n+1) augmented matrix [[X, w],[0, 0]] applied to [v; 1].
PhiActionResult phi1_combined_dense(double tau, const Eigen::MatrixXd& X,
                                    const Eigen::VectorXd& v,
                                    const Eigen::VectorXd& w);

/// Same quantity by an adaptive Arnoldi method on the augmented operator,
/// with internal substepping when the subspace cap is reached. The result
/// matches the dense path to within opts.krylov_tol.
/// Throws std::runtime_error if opts.max_substeps is exhausted.
PhiActionResult phi1_combined_krylov(double tau, const LinOp& X,
                                     const Eigen::VectorXd& v,
                                     const Eigen::VectorXd& w,
                                     const PhiOptions& opts = {});

/// Dispatch: dense when the matrix is available and small, Krylov otherwise.
PhiActionResult phi1_combined(double tau, const LinOp& X,
                              const Eigen::VectorXd& v,
                              const Eigen::VectorXd& w,
                              const PhiOptions& opts = {});

/// Precomputed pair for constant-matrix, uniform-step integration.
struct PhiPair {
  Eigen::MatrixXd exp_tau_A;
  Eigen::MatrixXd phi1_tau_A;

  Eigen::VectorXd combine(double tau, const Eigen::VectorXd& v,
                          const Eigen::VectorXd& w) const {
    return exp_tau_A * v + tau * (phi1_tau_A * w);
  }
};

PhiPair make_phi_pair(double tau, const Eigen::MatrixXd& A);

}  // namespace mfc
