#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "rng.hpp"
#include "svd.hpp"

namespace unorm {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class RuleKind { associative_solve, ipsg, star_algebra };

struct InverseRule {
  RuleKind kind = RuleKind::associative_solve;
  int m = 0, n = 0;  // signature, ipsg only

  std::string tag() const {
    switch (kind) {
      case RuleKind::associative_solve: return "associative_solve";
      case RuleKind::star_algebra: return "star_algebra";
      case RuleKind::ipsg: return "ipsg(" + std::to_string(m) + "," + std::to_string(n) + ")";
    }
    return "";
  }
};

struct AlgebraDef {
  std::string name;
  int dim = 0;
  std::vector<double> sc;  // c[i][j][k] at (i*dim + j)*dim + k
  Vec unity;
  std::vector<Mat> matrix_rep;
  InverseRule rule;
  std::optional<double> one_norm_sq_override;

  double c(int i, int j, int k) const { return sc[(static_cast<size_t>(i) * dim + j) * dim + k]; }
  double& c(int i, int j, int k) { return sc[(static_cast<size_t>(i) * dim + j) * dim + k]; }
};

inline void check_dim(const AlgebraDef& A, const Vec& v, const char* what = "element") {
  if (v.size() != A.dim) {
    std::ostringstream os;
    os << what << " has length " << v.size() << ", algebra " << A.name << " has dim " << A.dim;
    throw DimensionMismatch(os.str());
  }
}

inline Vec multiply(const AlgebraDef& A, const Vec& a, const Vec& b) {
  check_dim(A, a);
  check_dim(A, b);
  const int d = A.dim;
  Vec r = Vec::Zero(d);
  for (int i = 0; i < d; ++i) {
    if (a[i] == 0.0) continue;
    for (int j = 0; j < d; ++j) {
      double ab = a[i] * b[j];
      if (ab == 0.0) continue;
      const double* row = &A.sc[(static_cast<size_t>(i) * d + j) * d];
      for (int k = 0; k < d; ++k) r[k] += ab * row[k];
    }
  }
  return r;
}

// M with M*b = s*b
inline Mat left_mult_matrix(const AlgebraDef& A, const Vec& s) {
  check_dim(A, s);
  const int d = A.dim;
  Mat M = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    if (s[i] == 0.0) continue;
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) M(k, j) += s[i] * A.c(i, j, k);
  }
  return M;
}

// M with M*b = b*s
inline Mat right_mult_matrix(const AlgebraDef& A, const Vec& s) {
  check_dim(A, s);
  const int d = A.dim;
  Mat M = Mat::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    if (s[j] == 0.0) continue;
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k) M(k, i) += s[j] * A.c(i, j, k);
  }
  return M;
}

inline Vec basis_vector(const AlgebraDef& A, int i) { return Vec::Unit(A.dim, i); }

inline double associator_defect(const AlgebraDef& A) {
  const int d = A.dim;
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Vec eij = multiply(A, basis_vector(A, i), basis_vector(A, j));
      for (int k = 0; k < d; ++k) {
        Vec ek = basis_vector(A, k);
        Vec lhs = multiply(A, eij, ek);
        Vec rhs = multiply(A, basis_vector(A, i), multiply(A, basis_vector(A, j), ek));
        worst = std::max(worst, (lhs - rhs).norm());
      }
    }
  return worst;
}

inline bool is_associative(const AlgebraDef& A, double tol = 1e-12) {
  return associator_defect(A) < tol;
}

inline Mat ipsg_Q(const InverseRule& r) {
  Vec q(r.m + r.n);
  for (int i = 0; i < r.m; ++i) q[i] = 1.0;
  for (int i = 0; i < r.n; ++i) q[r.m + i] = -1.0;
  return q.asDiagonal();
}

namespace detail {

inline double ipsg_N(const AlgebraDef& A, const Vec& s) {
  double n = s[0] * s[0];
  for (int i = 1; i < A.dim; ++i) n -= (i <= A.rule.m ? 1.0 : -1.0) * s[i] * s[i];
  return n;
}

inline Vec star_conj(const Vec& s) {
  Vec r = -s;
  r[0] = s[0];
  return r;
}

inline double star_N(const AlgebraDef& A, const Vec& s) { return multiply(A, s, star_conj(s))[0]; }

inline double lm_condition(const AlgebraDef& A, const Vec& s) {
  Svd d = jacobi_svd(left_mult_matrix(A, s));
  double lo = d.s[d.s.size() - 1];
  return lo == 0.0 ? INFINITY : d.s[0] / lo;
}

}  // namespace detail

// Scale-invariant unit test used on every quadrature node.
inline bool is_unit(const AlgebraDef& A, const Vec& s) {
  check_dim(A, s);
  switch (A.rule.kind) {
    case RuleKind::ipsg:
      return std::abs(detail::ipsg_N(A, s)) > 1e-10 * s.squaredNorm();
    case RuleKind::star_algebra:
      return std::abs(detail::star_N(A, s)) > 1e-10 * s.squaredNorm();
    case RuleKind::associative_solve: {
      if (!s.allFinite()) return false;
      Svd d = jacobi_svd(left_mult_matrix(A, s));
      return d.s[0] > 0.0 && d.s[d.s.size() - 1] > 1e-10 * d.s[0];
    }
  }
  return false;
}

inline Vec inverse(const AlgebraDef& A, const Vec& s) {
  check_dim(A, s);
  switch (A.rule.kind) {
    case RuleKind::ipsg: {
      double N = detail::ipsg_N(A, s);
      if (!(std::abs(N) > 1e-10 * s.squaredNorm()))
        throw NotAUnit("ipsg norm form sigma^2 - s'Qs = " + std::to_string(N));
      Vec r = -s;
      r[0] = s[0];
      return r / N;
    }
    case RuleKind::star_algebra: {
      double N = detail::star_N(A, s);
      if (!(std::abs(N) > 1e-10 * s.squaredNorm()))
        throw NotAUnit("star norm N(s) = " + std::to_string(N));
      return detail::star_conj(s) / N;
    }
    case RuleKind::associative_solve: {
      double cond = detail::lm_condition(A, s);
      if (!(cond <= 1e12)) {
        std::ostringstream os;
        os << "left multiplication condition number " << cond << " exceeds 1e12";
        throw NotAUnit(os.str());
      }
      Eigen::PartialPivLU<Mat> lu(left_mult_matrix(A, s));
      return lu.solve(A.unity);
    }
  }
  return s;
}

// Rank of x -> diag(sum x_i B_i) for a list of representation matrices.
inline int diagonal_rank(const std::vector<Mat>& B) {
  if (B.empty()) return 0;
  const Eigen::Index n = B[0].rows();
  Mat D(n, static_cast<Eigen::Index>(B.size()));
  for (size_t i = 0; i < B.size(); ++i) D.col(static_cast<Eigen::Index>(i)) = B[i].diagonal();
  return numeric_rank(D, 1e-10);
}

inline std::vector<Mat> left_regular_rep(const AlgebraDef& A) {
  std::vector<Mat> B;
  for (int i = 0; i < A.dim; ++i) B.push_back(left_mult_matrix(A, basis_vector(A, i)));
  return B;
}

// Number of independent main-diagonal entries of the representation.
// Without matrix_rep or override, the left-regular representation is used
// unless allow_fallback is false.
inline double one_norm_sq(const AlgebraDef& A, bool allow_fallback = true) {
  if (A.one_norm_sq_override) return *A.one_norm_sq_override;
  if (A.rule.kind == RuleKind::ipsg) return 1.0;
  if (!A.matrix_rep.empty()) return diagonal_rank(A.matrix_rep);
  if (!allow_fallback)
    throw MissingRepresentation("algebra " + A.name + " has neither matrix_rep nor one_norm_sq");
  return diagonal_rank(left_regular_rep(A));
}

inline Mat rep_of(const AlgebraDef& A, const Vec& s) {
  if (A.matrix_rep.empty()) throw MissingRepresentation("algebra " + A.name + " has no matrix_rep");
  check_dim(A, s);
  Mat M = Mat::Zero(A.matrix_rep[0].rows(), A.matrix_rep[0].cols());
  for (int i = 0; i < A.dim; ++i) M += s[i] * A.matrix_rep[i];
  return M;
}

// Structure constants induced by a faithful matrix representation.
inline AlgebraDef from_matrix_rep(std::string name, std::vector<Mat> B, Vec unity,
                                  InverseRule rule = {}) {
  AlgebraDef A;
  A.name = std::move(name);
  A.dim = static_cast<int>(B.size());
  A.unity = std::move(unity);
  A.rule = rule;
  const int d = A.dim;
  const Eigen::Index n2 = B[0].size();
  Mat Bv(n2, d);
  for (int i = 0; i < d; ++i) Bv.col(i) = Eigen::Map<const Vec>(B[i].data(), n2);
  Eigen::ColPivHouseholderQR<Mat> qr(Bv);
  if (qr.rank() != d) throw InvalidAlgebra("representation of " + A.name + " is not faithful");
  A.sc.assign(static_cast<size_t>(d) * d * d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Mat P = B[i] * B[j];
      Vec coeff = qr.solve(Eigen::Map<const Vec>(P.data(), n2));
      if ((Bv * coeff - Eigen::Map<const Vec>(P.data(), n2)).norm() > 1e-12 * (1.0 + P.norm()))
        throw InvalidAlgebra("span of representation of " + A.name + " is not closed");
      for (int k = 0; k < d; ++k) A.c(i, j, k) = std::abs(coeff[k]) < 1e-15 ? 0.0 : coeff[k];
    }
  A.matrix_rep = std::move(B);
  return A;
}

struct ValidationReport {
  double unity_residual = 0.0;
  double rep_residual = 0.0;
  double one_norm_sq = 0.0;
  bool ok() const { return unity_residual < 1e-12 && rep_residual < 1e-12 && one_norm_sq > 0.0; }
};

inline ValidationReport validate(const AlgebraDef& A) {
  if (A.dim <= 0) throw InvalidAlgebra("dim must be positive");
  if (A.sc.size() != static_cast<size_t>(A.dim) * A.dim * A.dim)
    throw InvalidAlgebra("structure_constants must have dim^3 entries");
  check_dim(A, A.unity, "unity");
  if (!A.matrix_rep.empty() && static_cast<int>(A.matrix_rep.size()) != A.dim)
    throw InvalidAlgebra("matrix_rep must have dim matrices");
  if (A.rule.kind == RuleKind::ipsg && A.rule.m + A.rule.n + 1 != A.dim)
    throw InvalidAlgebra("ipsg signature does not match dim");
  if (A.rule.kind != RuleKind::associative_solve && (A.unity - Vec::Unit(A.dim, 0)).norm() != 0.0)
    throw InvalidAlgebra("ipsg and star rules require unity = e_0");

  ValidationReport r;
  for (int i = 0; i < A.dim; ++i) {
    Vec e = basis_vector(A, i);
    r.unity_residual = std::max(r.unity_residual, (multiply(A, A.unity, e) - e).norm());
    r.unity_residual = std::max(r.unity_residual, (multiply(A, e, A.unity) - e).norm());
  }
  if (!A.matrix_rep.empty()) {
    for (int i = 0; i < A.dim; ++i)
      for (int j = 0; j < A.dim; ++j) {
        Mat lhs = A.matrix_rep[i] * A.matrix_rep[j];
        Mat rhs = rep_of(A, multiply(A, basis_vector(A, i), basis_vector(A, j)));
        r.rep_residual = std::max(r.rep_residual, (lhs - rhs).cwiseAbs().maxCoeff());
      }
  }
  r.one_norm_sq = one_norm_sq(A);
  return r;
}

// s = 1 + radius * g with g uniform in the unit ball, resampled until s is a unit.
inline Vec sample_unit_near_one(const AlgebraDef& A, double radius, Rng& rng, int max_failures = 100) {
  for (int fail = 0; fail < max_failures; ++fail) {
    Vec s = A.unity + radius * rng.in_ball(A.dim);
    if (is_unit(A, s)) return s;
  }
  throw SamplingFailure("no unit found near 1 after " + std::to_string(max_failures) + " consecutive draws");
}

}  // namespace unorm
