#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "quadrature.hpp"
#include "svd.hpp"

namespace unorm {

enum class PathPolicy { segment, axis_polyline };

struct UnitalNormEvaluator {
  AlgebraDef algebra;
  Mat L;
  double quad_rel_tol = 1e-10;
  int max_subdivisions = 2000;
  PathPolicy path_policy = PathPolicy::segment;
  double norm1_sq = 1.0;  // cached one_norm_sq(algebra)
};

inline UnitalNormEvaluator make_evaluator(const AlgebraDef& A, const Mat& L,
                                          PathPolicy policy = PathPolicy::segment) {
  if (L.rows() != A.dim || L.cols() != A.dim) throw DimensionMismatch("L must be dim x dim");
  if ((L - L.transpose()).cwiseAbs().maxCoeff() > 1e-12) throw NotSymmetric("Proto-norm matrix is not symmetric");
  UnitalNormEvaluator E;
  E.algebra = A;
  E.L = L;
  E.path_policy = policy;
  E.norm1_sq = one_norm_sq(A);
  return E;
}

inline std::vector<Vec> default_path(const UnitalNormEvaluator& E, const Vec& s) {
  std::vector<Vec> pts{E.algebra.unity};
  if (E.path_policy == PathPolicy::axis_polyline) {
    Vec p = E.algebra.unity;
    for (int i = 0; i < E.algebra.dim; ++i) {
      if (p[i] == s[i]) continue;
      p[i] = s[i];
      pts.push_back(p);
    }
    if ((pts.back() - s).norm() != 0.0) pts.push_back(s);
  } else {
    pts.push_back(s);
  }
  return pts;
}

// log U along an explicit polyline starting at 1, times ||1||^2.
inline double line_integral(const UnitalNormEvaluator& E, const std::vector<Vec>& pts) {
  const AlgebraDef& A = E.algebra;
  double total = 0.0;
  for (size_t k = 0; k + 1 < pts.size(); ++k) {
    const Vec p0 = pts[k];
    const Vec dp = pts[k + 1] - pts[k];
    if (dp.norm() == 0.0) continue;
    auto f = [&](double tau) {
      Vec t = p0 + tau * dp;
      if (!is_unit(A, t)) throw PathCrossesNonUnits("quadrature node is not a unit in " + A.name);
      return (E.L * inverse(A, t)).dot(dp);
    };
    total += integrate_adaptive(f, 0.0, 1.0, E.quad_rel_tol, E.max_subdivisions).value;
  }
  return total;
}

inline double evaluate_along(const UnitalNormEvaluator& E, const std::vector<Vec>& pts) {
  for (const auto& p : pts) check_dim(E.algebra, p, "path point");
  if ((pts.front() - E.algebra.unity).norm() != 0.0) throw OutOfDomain("path must start at 1");
  return std::exp(line_integral(E, pts) / E.norm1_sq);
}

inline double evaluate(const UnitalNormEvaluator& E, const Vec& s) {
  check_dim(E.algebra, s);
  if ((s - E.algebra.unity).norm() == 0.0) return 1.0;
  if (!is_unit(E.algebra, s)) throw PathCrossesNonUnits("endpoint is not a unit");
  return evaluate_along(E, default_path(E, s));
}

// Fourth-order central stencil; h near eps^(1/5) balances truncation and rounding.
inline Vec gradient(const UnitalNormEvaluator& E, const Vec& s) {
  check_dim(E.algebra, s);
  const double h = 1e-3 * std::max(1.0, s.norm());
  Vec g(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    auto at = [&](double t) {
      Vec p = s;
      p[i] += t;
      return evaluate(E, p);
    };
    g[i] = (at(-2 * h) - 8.0 * at(-h) + 8.0 * at(h) - at(2 * h)) / (12.0 * h);
  }
  return g;
}

struct UnitalDecomposition {
  double magnitude = 0.0;
  Vec sphere_point;
  double residual = 0.0;
  double sphere_norm = 0.0;  // U(sphere_point), should be 1
};

inline double kernel_component(const Mat& L, const Vec& s) {
  Svd d = jacobi_svd(L);
  double smax = d.s.size() ? d.s[0] : 0.0;
  double comp2 = 0.0;
  for (Eigen::Index k = 0; k < d.s.size(); ++k)
    if (!(d.s[k] > 1e-10 * smax)) comp2 += std::pow(d.V.col(k).dot(s), 2);
  return std::sqrt(comp2);
}

inline UnitalDecomposition unital_decomposition(const UnitalNormEvaluator& E, const Vec& s) {
  check_dim(E.algebra, s);
  double kc = kernel_component(E.L, s);
  if (kc > 1e-8 * s.norm())
    throw KernelComponent("component in kernel(L) is " + std::to_string(kc));
  UnitalDecomposition r;
  r.magnitude = evaluate(E, s);
  Vec si = inverse(E.algebra, s);
  r.sphere_point = E.norm1_sq * (pinv(E.L, 1e-10) * gradient(E, si));
  r.residual = (s - r.magnitude * r.sphere_point).norm() / s.norm();
  r.sphere_norm = evaluate(E, r.sphere_point);
  return r;
}

inline double inverse_product_check(const UnitalNormEvaluator& E, const Vec& s) {
  return std::abs(evaluate(E, s) * evaluate(E, inverse(E.algebra, s)) - 1.0);
}

}  // namespace unorm
