#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "protonorm.hpp"
#include "rng.hpp"
#include "svd.hpp"

namespace unorm {

struct IdealSpec {
  std::vector<Vec> basis;
};

struct QuotientResult {
  AlgebraDef algebra;
  Mat K;           // m x n, quotient coordinates of an element of A
  Mat complement;  // n x m, chosen complement basis (columns)
};

struct MorphismVerdict {
  bool exists = false;
  double witness_residual = 0.0;  // max over the per-member residuals
  std::vector<double> residuals;
  Mat K;
};

namespace detail {

// Orthonormal basis (columns) of span(vs) with rank threshold rel 1e-10.
inline Mat orthonormal_span(int d, const std::vector<Vec>& vs) {
  if (vs.empty()) return Mat(d, 0);
  Mat V(d, static_cast<Eigen::Index>(vs.size()));
  for (size_t i = 0; i < vs.size(); ++i) V.col(static_cast<Eigen::Index>(i)) = vs[i];
  if (V.norm() == 0.0) return Mat(d, 0);
  Svd s = jacobi_svd(V);
  Eigen::Index r = 0;
  while (r < s.s.size() && s.s[r] > 1e-10 * s.s[0]) ++r;
  return s.U.leftCols(r);
}

inline double out_of_span(const Mat& Q, const Vec& v) { return (v - Q * (Q.transpose() * v)).norm(); }

}  // namespace detail

// Largest distance of e_a*v or v*e_a from span(I), over basis elements a and ideal members v.
inline double ideal_residual(const AlgebraDef& A, const IdealSpec& I) {
  for (const auto& v : I.basis) check_dim(A, v, "ideal member");
  Mat Q = detail::orthonormal_span(A.dim, I.basis);
  double worst = 0.0;
  for (Eigen::Index c = 0; c < Q.cols(); ++c)
    for (int a = 0; a < A.dim; ++a) {
      Vec e = basis_vector(A, a);
      worst = std::max(worst, detail::out_of_span(Q, multiply(A, e, Q.col(c))));
      worst = std::max(worst, detail::out_of_span(Q, multiply(A, Q.col(c), e)));
    }
  return worst;
}

inline QuotientResult quotient_algebra(const AlgebraDef& A, const IdealSpec& I) {
  const int d = A.dim;
  Mat Q = detail::orthonormal_span(d, I.basis);
  double res = ideal_residual(A, I);
  if (res > 1e-10) throw NotAnIdeal("closure residual " + std::to_string(res));
  if (Q.cols() > 0 && detail::out_of_span(Q, A.unity) < 1e-10 * A.unity.norm())
    throw IdealContainsUnity("unity lies in the ideal");
  if (Q.cols() == 0) return {A, Mat::Identity(d, d), Mat::Identity(d, d)};

  // complete with standard basis vectors, largest remaining component first
  std::vector<Vec> chosen;
  Mat span = Q;
  while (span.cols() < d) {
    int best = -1;
    double best_r = 0.0;
    for (int i = 0; i < d; ++i) {
      double r = detail::out_of_span(span, Vec::Unit(d, i));
      if (r > best_r + 1e-12) {
        best_r = r;
        best = i;
      }
    }
    chosen.push_back(Vec::Unit(d, best));
    std::vector<Vec> all(chosen);
    for (Eigen::Index c = 0; c < Q.cols(); ++c) all.push_back(Q.col(c));
    span = detail::orthonormal_span(d, all);
  }
  std::sort(chosen.begin(), chosen.end(), [](const Vec& a, const Vec& b) {
    Eigen::Index ia, ib;
    a.maxCoeff(&ia);
    b.maxCoeff(&ib);
    return ia < ib;
  });

  const int m = static_cast<int>(chosen.size());
  Mat T(d, d);
  for (int a = 0; a < m; ++a) T.col(a) = chosen[a];
  T.rightCols(d - m) = Q;
  Mat Tinv = T.fullPivLu().inverse();

  QuotientResult out;
  out.K = Tinv.topRows(m);
  out.complement = T.leftCols(m);
  AlgebraDef& B = out.algebra;
  B.name = A.name + "/I";
  B.dim = m;
  B.rule = {};
  B.unity = out.K * A.unity;
  B.sc.assign(static_cast<size_t>(m) * m * m, 0.0);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      Vec prod = out.K * multiply(A, chosen[a], chosen[b]);
      for (int k = 0; k < m; ++k) B.c(a, b, k) = std::abs(prod[k]) < 1e-15 ? 0.0 : prod[k];
    }
  return out;
}

inline Mat pullback_protonorm(const Mat& K, const Mat& L) {
  if (L.rows() != K.rows() || L.cols() != K.rows())
    throw DimensionMismatch("L must be " + std::to_string(K.rows()) + " x " + std::to_string(K.rows()));
  return K.transpose() * L * K;
}

inline MorphismVerdict morphism_exists(const ProtoNormFamily& F1, const ProtoNormFamily& F2, const Mat& K) {
  if (K.cols() != F1.algebra.dim || K.rows() != F2.algebra.dim)
    throw DimensionMismatch("K must be dim(A2) x dim(A1)");
  MorphismVerdict v;
  v.K = K;
  for (const auto& L : F2.basis) {
    double r = span_residual(F1.basis, pullback_protonorm(K, L));
    v.residuals.push_back(r);
    v.witness_residual = std::max(v.witness_residual, r);
  }
  v.exists = v.witness_residual < 1e-8;
  return v;
}

// Order-preserving coordinate selections of dim(A2) coordinates out of dim(A1).
inline std::vector<Mat> coordinate_alignments(int n1, int n2, size_t cap = 5000) {
  std::vector<Mat> out;
  if (n2 > n1) return out;
  std::vector<int> idx(n2);
  std::function<void(int, int)> rec = [&](int pos, int start) {
    if (out.size() >= cap) return;
    if (pos == n2) {
      Mat K = Mat::Zero(n2, n1);
      for (int r = 0; r < n2; ++r) K(r, idx[r]) = 1.0;
      out.push_back(K);
      return;
    }
    for (int i = start; i <= n1 - (n2 - pos); ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
  return out;
}

inline int family_max_rank(const ProtoNormFamily& F, std::uint64_t seed) {
  if (F.basis.empty()) return 0;
  Rng rng(seed, 0x52414e4bULL);
  int best = 0;
  for (int t = 0; t < 5; ++t) {
    Mat L = Mat::Zero(F.basis[0].rows(), F.basis[0].cols());
    for (const auto& B : F.basis) L += rng.normal() * B;
    best = std::max(best, numeric_rank(L, 1e-10));
  }
  return best;
}

struct ExclusionReport {
  bool excluded = false;
  bool alignment_found = false;
  bool dimension_certificate = false;
  bool rank_certificate = false;
  bool trace_certificate = false;
  std::vector<MorphismVerdict> candidates;
};

// Sound exclusion: no supplied or coordinate alignment gives a morphism, and at least
// one similarity-invariant obstruction separates the padded target family from the source.
inline ExclusionReport exclusion_report(const ProtoNormFamily& F1, const ProtoNormFamily& F2,
                                        const std::vector<Mat>& extra = {}, std::uint64_t seed = 0) {
  ExclusionReport r;
  std::vector<Mat> cands = coordinate_alignments(F1.algebra.dim, F2.algebra.dim);
  for (const auto& K : extra) cands.push_back(K);
  for (const auto& K : cands) {
    MorphismVerdict v = morphism_exists(F1, F2, K);
    r.alignment_found = r.alignment_found || v.exists;
    r.candidates.push_back(std::move(v));
  }
  r.dimension_certificate = F2.dimension() > F1.dimension();
  r.rank_certificate = family_max_rank(F2, seed) > family_max_rank(F1, seed);
  bool f1_traceless = std::all_of(F1.basis.begin(), F1.basis.end(),
                                  [](const Mat& B) { return std::abs(B.trace()) < 1e-10; });
  bool f2_traced = std::any_of(F2.basis.begin(), F2.basis.end(),
                               [](const Mat& B) { return std::abs(B.trace()) > 1e-8; });
  r.trace_certificate = f1_traceless && f2_traced;
  r.excluded = !r.alignment_found &&
               (r.dimension_certificate || r.rank_certificate || r.trace_certificate);
  return r;
}

inline bool epimorphism_excluded(const AlgebraDef& A1, const AlgebraDef& A2, const std::vector<Mat>& extra = {},
                                 std::uint64_t seed = 0) {
  return exclusion_report(solve_family(A1, seed), solve_family(A2, seed), extra, seed).excluded;
}

}  // namespace unorm
