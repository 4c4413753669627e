#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "rng.hpp"
#include "svd.hpp"

namespace unorm {

struct ProtoNormFamily {
  AlgebraDef algebra;
  std::vector<Mat> basis;
  std::optional<Mat> normalized_point;
  std::vector<Mat> normalized_directions;
  Vec singular_values;  // of the stacked constraint matrix, diagnostic

  int dimension() const { return static_cast<int>(basis.size()); }
};

// Columns j hold d(s^-1)/dx_j.
inline Mat inverse_jacobian(const AlgebraDef& A, const Vec& s, bool exact) {
  const int d = A.dim;
  Mat D(d, d);
  if (exact) {
    Vec si = inverse(A, s);
    Mat Lsi = left_mult_matrix(A, si);
    for (int j = 0; j < d; ++j) D.col(j) = -Lsi * multiply(A, basis_vector(A, j), si);
    return D;
  }
  if (!is_unit(A, s)) throw NotAUnit("curl requested at a non-unit");
  const double h = 1e-5 * std::max(1.0, s.norm());
  for (int j = 0; j < d; ++j) {
    Vec sp = s, sm = s;
    sp[j] += h;
    sm[j] -= h;
    D.col(j) = (inverse(A, sp) - inverse(A, sm)) / (2.0 * h);
  }
  return D;
}

inline Mat curl_from_jacobian(const Mat& L, const Mat& D) {
  Mat J = L * D;  // J(a,i) = d_i (L s^-1)_a
  return J.transpose() - J;
}

inline Mat curl_residual(const AlgebraDef& A, const Mat& L, const Vec& s, bool exact) {
  check_dim(A, s);
  if (L.rows() != A.dim || L.cols() != A.dim) throw DimensionMismatch("L must be dim x dim");
  if (!is_unit(A, s)) throw NotAUnit("curl requested at a non-unit");
  return curl_from_jacobian(L, inverse_jacobian(A, s, exact));
}

// Exact inverse derivative wherever the algebra is associative.
inline Mat curl_residual(const AlgebraDef& A, const Mat& L, const Vec& s) {
  return curl_residual(A, L, s, is_associative(A));
}

namespace detail {

// Frobenius-orthonormal basis of the symmetric d x d matrices.
inline std::vector<Mat> symmetric_basis(int d) {
  std::vector<Mat> S;
  const double w = 1.0 / std::sqrt(2.0);
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b) {
      Mat m = Mat::Zero(d, d);
      if (a == b) {
        m(a, a) = 1.0;
      } else {
        m(a, b) = w;
        m(b, a) = w;
      }
      S.push_back(m);
    }
  return S;
}

inline Mat combine(const std::vector<Mat>& B, const Vec& coeff) {
  Mat L = Mat::Zero(B[0].rows(), B[0].cols());
  for (size_t k = 0; k < B.size(); ++k) L += coeff[static_cast<Eigen::Index>(k)] * B[k];
  return L;
}

// Deterministic sign: largest-magnitude entry (first in column-major order) positive.
inline void fix_sign(Mat& M) {
  Eigen::Index r = 0, c = 0;
  M.cwiseAbs().maxCoeff(&r, &c);
  if (M(r, c) < 0.0) M = -M;
}

}  // namespace detail

inline ProtoNormFamily solve_family(const AlgebraDef& A, int n_samples, std::uint64_t seed) {
  const int d = A.dim;
  if (n_samples < 3 * d * d)
    throw std::invalid_argument("solve_family needs n_samples >= 3*dim^2 = " + std::to_string(3 * d * d));
  const bool exact = is_associative(A);
  const auto S = detail::symmetric_basis(d);
  const int nu = static_cast<int>(S.size());
  const int per = d * (d - 1) / 2;

  Mat C(static_cast<Eigen::Index>(n_samples) * per, nu);
  Rng rng(seed, 0x50524f544fULL);
  for (int k = 0; k < n_samples; ++k) {
    Vec s = sample_unit_near_one(A, 0.1, rng);
    Mat D = inverse_jacobian(A, s, exact);
    for (int u = 0; u < nu; ++u) {
      Mat curl = curl_from_jacobian(S[u], D);
      int r = 0;
      for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) C(static_cast<Eigen::Index>(k) * per + r++, u) = curl(i, j);
    }
  }

  ProtoNormFamily F;
  F.algebra = A;
  Mat N;
  if (per == 0) {
    N = Mat::Identity(nu, nu);
    F.singular_values = Vec();
  } else {
    Svd sv = jacobi_svd(C);
    F.singular_values = sv.s;
    Eigen::Index rank = 0;
    while (rank < sv.s.size() && sv.s[rank] > 1e-8 * sv.s[0]) ++rank;
    N = sv.V.rightCols(nu - rank);
  }
  for (Eigen::Index c = 0; c < N.cols(); ++c) {
    Mat L = detail::combine(S, N.col(c));
    detail::fix_sign(L);
    F.basis.push_back(L);
  }
  return F;
}

inline ProtoNormFamily solve_family(const AlgebraDef& A, std::uint64_t seed = 0) {
  return solve_family(A, 3 * A.dim * A.dim, seed);
}

inline double normalization_value(const AlgebraDef& A, const Mat& L, const Vec& s) {
  return s.dot(L * inverse(A, s));
}

inline ProtoNormFamily normalize_family(ProtoNormFamily F, std::uint64_t seed = 0) {
  const AlgebraDef& A = F.algebra;
  const int k = F.dimension();
  if (k == 0) throw NoNormalizedSlice("family is empty");
  const double n1 = one_norm_sq(A);
  const Vec one_inv = inverse(A, A.unity);
  Vec c(k);
  for (int i = 0; i < k; ++i) c[i] = A.unity.dot(F.basis[i] * one_inv);
  const double cn = c.norm();
  if (cn < 1e-12) throw NoNormalizedSlice("1'L1^-1 vanishes on the whole family");

  F.normalized_point = detail::combine(F.basis, c * (n1 / (cn * cn)));
  F.normalized_directions.clear();
  if (k > 1) {
    Eigen::HouseholderQR<Mat> qr(c);
    Mat Q = qr.householderQ() * Mat::Identity(k, k);
    for (int j = 1; j < k; ++j) {
      Mat Dm = detail::combine(F.basis, Q.col(j));
      detail::fix_sign(Dm);
      F.normalized_directions.push_back(Dm);
    }
  }

  Rng rng(seed, 0x4e4f524dULL);
  for (int t = 0; t < 50; ++t) {
    Vec s = sample_unit_near_one(A, 0.1, rng);
    double v = normalization_value(A, *F.normalized_point, s);
    if (std::abs(v - n1) > 1e-8)
      throw SliceNotConstant("s'Ls^-1 = " + std::to_string(v) + " differs from ||1||^2 = " + std::to_string(n1));
  }
  return F;
}

// Coordinate matrix of s -> projection of rep(s)^T onto span{B_i}.
inline Mat transpose_induced(const AlgebraDef& A) {
  if (A.matrix_rep.empty()) throw MissingRepresentation("transpose_induced needs matrix_rep on " + A.name);
  const int d = A.dim;
  Mat G(d, d), M(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      G(j, k) = (A.matrix_rep[j].array() * A.matrix_rep[k].array()).sum();
      M(j, k) = (A.matrix_rep[j].array() * A.matrix_rep[k].transpose().array()).sum();
    }
  Mat P = G.ldlt().solve(M);
  double asym = (P - P.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10)
    throw NotSymmetric("transpose-induced map deviates from symmetry by " + std::to_string(asym));
  return 0.5 * (P + P.transpose());
}

// Residual of the orthogonal projection of L onto span(basis), Frobenius.
inline double span_residual(const std::vector<Mat>& basis, const Mat& L) {
  if (basis.empty()) return L.norm();
  const Eigen::Index n2 = L.size();
  Mat B(n2, static_cast<Eigen::Index>(basis.size()));
  for (size_t k = 0; k < basis.size(); ++k)
    B.col(static_cast<Eigen::Index>(k)) = Eigen::Map<const Vec>(basis[k].data(), n2);
  Eigen::Map<const Vec> l(L.data(), n2);
  Vec coeff = B.colPivHouseholderQr().solve(l);
  return (B * coeff - l).norm();
}

}  // namespace unorm
