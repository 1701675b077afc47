#include "mfc/matfun.hpp"

#include <cmath>
#include <stdexcept>

namespace mfc {

Eigen::MatrixXd LinOp::dense() const {
  if (const auto* d = std::get_if<Eigen::MatrixXd>(&rep_)) return *d;
  if (const auto* s = std::get_if<Eigen::SparseMatrix<double>>(&rep_))
    return Eigen::MatrixXd(*s);
  throw std::logic_error("LinOp::dense: operator is matrix-free");
}

Eigen::VectorXd LinOp::operator()(const Eigen::VectorXd& x) const {
  if (const auto* d = std::get_if<Eigen::MatrixXd>(&rep_)) return *d * x;
  if (const auto* s = std::get_if<Eigen::SparseMatrix<double>>(&rep_))
    return *s * x;
  return std::get<ApplyFn>(rep_)(x);
}

namespace {

// Pade numerator coefficients for the [m/m] approximants (Higham 2005).
const double kB3[] = {120, 60, 12, 1};
const double kB5[] = {30240, 15120, 3360, 420, 30, 1};
const double kB7[] = {17297280, 8648640, 1995840, 277200, 25200, 1512, 56, 1};
const double kB9[] = {17643225600., 8821612800., 2075673600., 302702400.,
                      30270240.,    2162160.,    110880.,     3960.,
                      90.,          1.};
const double kB13[] = {64764752532480000., 32382376266240000.,
                       7771770303897600.,  1187353796428800.,
                       129060195264000.,   10559470521600.,
                       670442572800.,      33522128640.,
                       1323241920.,        40840800.,
                       960960.,            16380.,
                       182.,               1.};

constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068;
constexpr double kTheta13 = 5.371920351148152;

using Mat = Eigen::MatrixXd;

Mat pade_solve(const Mat& U, const Mat& V) {
  // r = (V - U)^{-1} (V + U)
  return (V - U).partialPivLu().solve(V + U);
}

Mat pade_low(const Mat& X, const Mat& X2, const double* b, int m) {
  const int n = static_cast<int>(X.rows());
  const Mat I = Mat::Identity(n, n);
  Mat Ueven = Mat::Zero(n, n);  // polynomial in X2 multiplying X
  Mat V = Mat::Zero(n, n);
  Mat P = I;  // X2^k
  Ueven += b[1] * P;
  V += b[0] * P;
  for (int k = 1; 2 * k <= m; ++k) {
    P = P * X2;
    if (2 * k + 1 <= m) Ueven += b[2 * k + 1] * P;
    V += b[2 * k] * P;
  }
  return pade_solve(X * Ueven, V);
}

}  // namespace

Eigen::MatrixXd expm_dense(const Eigen::MatrixXd& X) {
  if (!X.allFinite()) throw std::runtime_error("expm_dense: non-finite input");
  const int n = static_cast<int>(X.rows());
  if (n == 0) return X;
  const double norm = X.cwiseAbs().colwise().sum().maxCoeff();  // 1-norm

  Mat R;
  if (norm <= kTheta9) {
    const Mat X2 = X * X;
    if (norm <= kTheta3)
      R = pade_low(X, X2, kB3, 3);
    else if (norm <= kTheta5)
      R = pade_low(X, X2, kB5, 5);
    else if (norm <= kTheta7)
      R = pade_low(X, X2, kB7, 7);
    else
      R = pade_low(X, X2, kB9, 9);
  } else {
    int s = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
    if (s < 0) s = 0;
    const Mat A = X / std::ldexp(1.0, s);
    const Mat A2 = A * A;
    const Mat A4 = A2 * A2;
    const Mat A6 = A2 * A4;
    const Mat I = Mat::Identity(n, n);
    const double* b = kB13;
    Mat U = A * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 +
                 b[5] * A4 + b[3] * A2 + b[1] * I);
    Mat V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 +
            b[4] * A4 + b[2] * A2 + b[0] * I;
    R = pade_solve(U, V);
    for (int k = 0; k < s; ++k) R = R * R;
  }
  if (!R.allFinite())
    throw std::runtime_error("expm_dense: overflow in scaling and squaring");
  return R;
}

PhiActionResult phi1_combined_dense(double tau, const Eigen::MatrixXd& X,
                                    const Eigen::VectorXd& v,
                                    const Eigen::VectorXd& w) {
  const int n = static_cast<int>(X.rows());
  if (v.size() != n || w.size() != n)
    throw std::invalid_argument("phi1_combined_dense: dimension mismatch");
  Mat aug = Mat::Zero(n + 1, n + 1);
  aug.topLeftCorner(n, n) = tau * X;
  aug.topRightCorner(n, 1) = tau * w;
  const Mat E = expm_dense(aug);
  PhiActionResult res;
  res.y = E.topLeftCorner(n, n) * v + E.topRightCorner(n, 1);
  return res;
}

PhiActionResult phi1_combined_krylov(double tau, const LinOp& X,
                                     const Eigen::VectorXd& v,
                                     const Eigen::VectorXd& w,
                                     const PhiOptions& opts) {
  const int n = X.dim();
  if (v.size() != n || w.size() != n)
    throw std::invalid_argument("phi1_combined_krylov: dimension mismatch");
  if (tau <= 0) throw std::invalid_argument("phi1_combined_krylov: tau <= 0");

  PhiActionResult res;
  if (v.isZero(0.0) && w.isZero(0.0)) {
    res.y = Eigen::VectorXd::Zero(n);
    return res;
  }

  // Augmented operator on R^{n+1}: z -> [X z_1..n + z_{n+1} w ; 0].
  auto apply_aug = [&](const Eigen::VectorXd& z) {
    Eigen::VectorXd out(n + 1);
    out.head(n) = X(z.head(n)) + z(n) * w;
    out(n) = 0.0;
    return out;
  };

  const double scale =
      v.lpNorm<Eigen::Infinity>() + tau * w.lpNorm<Eigen::Infinity>() + 1e-300;
  const double tol_abs = opts.krylov_tol * scale;
  const int mmax = std::min(opts.max_krylov_dim, n + 1);
  const int check_every = 4;

  Eigen::VectorXd y(n + 1);
  y.head(n) = v;
  y(n) = 1.0;

  Mat V(n + 1, mmax + 1);
  Mat H = Mat::Zero(mmax + 2, mmax + 2);

  double done = 0.0;
  double sub = tau;
  while (done < tau * (1.0 - 1e-14)) {
    if (res.stats.substeps >= opts.max_substeps)
      throw std::runtime_error(
          "phi1_combined_krylov: no convergence within max substeps");
    sub = std::min(sub, tau - done);
    const double beta = y.norm();
    V.col(0) = y / beta;
    H.setZero();

    int m_used = -1;
    double err_loc = 0.0;
    bool happy = false;

    int j = 0;
    while (j <= mmax) {
      Eigen::VectorXd q = apply_aug(V.col(j));
      const double avnorm = q.norm();

      // a-posteriori local error estimate for the current m = j basis
      if (j >= 2 && (j % check_every == 0 || j == mmax)) {
        Mat hbar = Mat::Zero(j + 2, j + 2);
        hbar.topLeftCorner(j, j) = H.topLeftCorner(j, j);
        hbar(j, j - 1) = H(j, j - 1);
        hbar(j + 1, j) = 1.0;
        const Mat F = expm_dense(sub * hbar);
        const double err1 = beta * std::abs(F(j, 0));
        const double err2 = beta * std::abs(F(j + 1, 0)) * avnorm;
        double err;
        if (err1 > 10.0 * err2)
          err = err2;
        else if (err1 > err2)
          err = err1 * err2 / (err1 - err2);
        else
          err = err1;
        if (err <= tol_abs * (sub / tau)) {
          // hbar is block triangular, so F's leading j x j block is
          // exactly expm(sub * H_j)
          y.head(n) =
              beta * (V.leftCols(j) * F.col(0).head(j)).head(n);
          m_used = j;
          err_loc = err;
          break;
        }
        if (j == mmax) break;  // reject, shrink the substep
      }

      // Arnoldi with modified Gram-Schmidt and one reorthogonalization pass
      for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i <= j; ++i) {
          const double c = q.dot(V.col(i));
          if (pass == 0)
            H(i, j) = c;
          else
            H(i, j) += c;
          q -= c * V.col(i);
        }
      }
      const double hnext = q.norm();
      H(j + 1, j) = hnext;
      if (hnext <= 1e-12 * avnorm + 1e-300) {
        // invariant subspace: the small exponential is exact
        y.head(n) =
            beta *
            (V.leftCols(j + 1) *
             expm_dense(sub * H.topLeftCorner(j + 1, j + 1)).col(0))
                .head(n);
        m_used = j + 1;
        happy = true;
        break;
      }
      V.col(j + 1) = q / hnext;
      ++j;
    }

    if (m_used < 0) {
      sub *= 0.5;
      if (sub < 1e-15 * tau)
        throw std::runtime_error("phi1_combined_krylov: step size underflow");
      continue;
    }

    y(n) = 1.0;
    done += sub;
    ++res.stats.substeps;
    res.stats.krylov_dim = std::max(res.stats.krylov_dim, m_used);
    if (!happy && err_loc < 0.1 * tol_abs * (sub / tau)) sub *= 1.5;
  }

  res.y = y.head(n);
  return res;
}

PhiActionResult phi1_combined(double tau, const LinOp& X,
                              const Eigen::VectorXd& v,
                              const Eigen::VectorXd& w,
                              const PhiOptions& opts) {
  if (X.has_matrix() && X.dim() <= opts.dense_threshold)
    return phi1_combined_dense(tau, X.dense(), v, w);
  return phi1_combined_krylov(tau, X, v, w, opts);
}

PhiPair make_phi_pair(double tau, const Eigen::MatrixXd& A) {
  const int n = static_cast<int>(A.rows());
  Mat aug = Mat::Zero(2 * n, 2 * n);
  aug.topLeftCorner(n, n) = tau * A;
  aug.topRightCorner(n, n) = tau * Mat::Identity(n, n);
  const Mat E = expm_dense(aug);
  PhiPair pair;
  pair.exp_tau_A = E.topLeftCorner(n, n);
  pair.phi1_tau_A = E.topRightCorner(n, n) / tau;
  return pair;
}

}  // namespace mfc
