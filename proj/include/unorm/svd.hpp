#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace unorm {

struct Svd {
  Eigen::MatrixXd U;  // m x k, k = min(m,n)
  Eigen::VectorXd s;  // descending
  Eigen::MatrixXd V;  // n x k
};

namespace detail {

// Hestenes one-sided Jacobi on a matrix with rows >= cols.
inline void hestenes(Eigen::MatrixXd& W, Eigen::MatrixXd& V, double tol, int max_sweeps) {
  const Eigen::Index n = W.cols();
  V.setIdentity(n, n);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        double a = W.col(p).squaredNorm();
        double b = W.col(q).squaredNorm();
        double g = W.col(p).dot(W.col(q));
        if (g == 0.0 || std::abs(g) <= tol * std::sqrt(a * b)) continue;
        rotated = true;
        double zeta = (b - a) / (2.0 * g);
        double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = c * t;
        for (Eigen::Index i = 0; i < W.rows(); ++i) {
          double wp = W(i, p), wq = W(i, q);
          W(i, p) = c * wp - s * wq;
          W(i, q) = s * wp + c * wq;
        }
        for (Eigen::Index i = 0; i < n; ++i) {
          double vp = V(i, p), vq = V(i, q);
          V(i, p) = c * vp - s * vq;
          V(i, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) return;
  }
}

// Fill zero columns of U so that U has orthonormal columns.
inline void complete_orthonormal(Eigen::MatrixXd& U, std::vector<bool> done) {
  const Eigen::Index m = U.rows();
  Eigen::Index e = 0;
  for (Eigen::Index j = 0; j < U.cols(); ++j) {
    if (done[j]) continue;
    for (; e < m; ++e) {
      Eigen::VectorXd v = Eigen::VectorXd::Unit(m, e);
      for (int pass = 0; pass < 2; ++pass)
        for (Eigen::Index k = 0; k < U.cols(); ++k)
          if (done[k]) v -= U.col(k).dot(v) * U.col(k);
      if (v.norm() > 0.5) {
        U.col(j) = v.normalized();
        done[j] = true;
        ++e;
        break;
      }
    }
  }
}

}  // namespace detail

// Thin SVD by one-sided Jacobi. Tall inputs are first reduced by Householder QR.
inline Svd jacobi_svd(const Eigen::MatrixXd& A, double tol = 1e-14, int max_sweeps = 80) {
  const bool wide = A.cols() > A.rows();
  Eigen::MatrixXd M = wide ? Eigen::MatrixXd(A.transpose()) : A;
  const Eigen::Index m = M.rows(), n = M.cols();

  Eigen::MatrixXd Q;
  Eigen::MatrixXd W;
  const bool reduce = m > n;
  if (reduce) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(M);
    W = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
    Q = qr.householderQ() * Eigen::MatrixXd::Identity(m, n);
  } else {
    W = M;
  }

  Eigen::MatrixXd V;
  detail::hestenes(W, V, tol, max_sweeps);

  Eigen::VectorXd s(n);
  for (Eigen::Index j = 0; j < n; ++j) s[j] = W.col(j).norm();
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return s[a] > s[b]; });

  Svd out;
  out.s.resize(n);
  Eigen::MatrixXd Uw(W.rows(), n);
  out.V.resize(n, n);
  std::vector<bool> filled(n, false);
  const double floor = (n > 0 ? s.maxCoeff() : 0.0) * 1e-300;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index j = order[k];
    out.s[k] = s[j];
    out.V.col(k) = V.col(j);
    if (s[j] > floor && s[j] > 0.0) {
      Uw.col(k) = W.col(j) / s[j];
      filled[k] = true;
    } else {
      Uw.col(k).setZero();
    }
  }
  detail::complete_orthonormal(Uw, filled);
  Eigen::MatrixXd U = reduce ? Eigen::MatrixXd(Q * Uw) : Uw;

  if (wide) {
    out.U = out.V;
    out.V = U;
  } else {
    out.U = U;
  }
  return out;
}

// Right null space: columns of V whose singular value is below rel_tol * s_max
// (plus the directions beyond min(m,n) for wide inputs).
inline Eigen::MatrixXd nullspace(const Eigen::MatrixXd& A, double rel_tol) {
  const Eigen::Index n = A.cols();
  if (A.rows() == 0) return Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd B = A;
  if (A.rows() < n) {
    B = Eigen::MatrixXd::Zero(n, n);
    B.topRows(A.rows()) = A;
  }
  Svd d = jacobi_svd(B);
  double smax = d.s.size() ? d.s[0] : 0.0;
  Eigen::Index rank = 0;
  while (rank < d.s.size() && d.s[rank] > rel_tol * smax) ++rank;
  return d.V.rightCols(n - rank);
}

inline Eigen::MatrixXd pinv(const Eigen::MatrixXd& A, double rel_tol) {
  Svd d = jacobi_svd(A);
  double smax = d.s.size() ? d.s[0] : 0.0;
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(A.cols(), A.rows());
  for (Eigen::Index k = 0; k < d.s.size(); ++k)
    if (d.s[k] > rel_tol * smax) P += d.V.col(k) * d.U.col(k).transpose() / d.s[k];
  return P;
}

inline int numeric_rank(const Eigen::MatrixXd& A, double rel_tol) {
  if (A.size() == 0) return 0;
  Svd d = jacobi_svd(A);
  double smax = d.s[0];
  int r = 0;
  while (r < d.s.size() && d.s[r] > rel_tol * smax) ++r;
  return smax == 0.0 ? 0 : r;
}

}  // namespace unorm
