#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "algebra.hpp"

namespace unorm {

inline bool toeplitz_is_unit(const Vec& x) {
  return x.size() > 0 && std::abs(x[0]) > 1e-12 * x.norm();
}

// Inverse in uT_n by the diagonal recursion; O(n^2).
inline Vec toeplitz_inverse(const Vec& x) {
  if (!toeplitz_is_unit(x)) throw NotAUnit("leading Toeplitz coefficient vanishes");
  const Eigen::Index n = x.size();
  Vec y(n);
  y[0] = 1.0 / x[0];
  for (Eigen::Index k = 1; k < n; ++k) {
    double acc = 0.0;
    for (Eigen::Index m = 1; m <= k; ++m) acc += x[m] * y[k - m];
    y[k] = -acc / x[0];
  }
  return y;
}

// H(i,j) = gamma_{i+j} (0-based), zero below the anti-diagonal.
inline Mat hankel_protonorm(const Vec& gammas) {
  const Eigen::Index n = gammas.size();
  Mat H = Mat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; i + j < n; ++j) H(i, j) = gammas[i + j];
  return H;
}

// Coefficients c_1..c_{n-1} of log(1 + a_1 u + ... + a_{n-1} u^{n-1}) mod u^n.
inline Vec log_series(const Vec& a) {
  const Eigen::Index n = a.size();
  Vec l = Vec::Zero(n);
  for (Eigen::Index k = 1; k < n; ++k) {
    double acc = 0.0;
    for (Eigen::Index j = 1; j < k; ++j) acc += static_cast<double>(j) * l[j] * a[k - j];
    l[k] = a[k] - acc / static_cast<double>(k);
  }
  return l;
}

inline double log_series_norm(const Vec& gammas, const Vec& x) {
  if (gammas.size() != x.size()) throw DimensionMismatch("gammas and element differ in length");
  if (std::abs(gammas[0] - 1.0) > 1e-12) throw std::invalid_argument("log_series_norm needs gamma_1 = 1");
  if (!toeplitz_is_unit(x)) throw NotAUnit("leading Toeplitz coefficient vanishes");
  if (x[0] <= 0.0) throw NonPositiveLeading("x_1 = " + std::to_string(x[0]));
  Vec a = x / x[0];  // a[0] = 1
  Vec c = log_series(a);
  double e = 0.0;
  for (Eigen::Index k = 1; k < x.size(); ++k) e += gammas[k] * c[k];
  return x[0] * std::exp(e);
}

}  // namespace unorm
