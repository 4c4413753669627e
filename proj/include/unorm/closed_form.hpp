#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "rng.hpp"
#include "toeplitz.hpp"

namespace unorm {

namespace detail {

inline void need_params(const std::string& name, const Vec& p, Eigen::Index n) {
  if (p.size() != n)
    throw std::invalid_argument(name + " takes " + std::to_string(n) + " parameter(s), got " +
                                std::to_string(p.size()));
}

inline void need(bool ok, const std::string& what) {
  if (!ok) throw OutOfDomain(what);
}

inline Mat transpose_matrix(int n) {
  Mat T = Mat::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) T(i + n * j, j + n * i) = 1.0;
  return T;
}

}  // namespace detail

inline int table1_param_count(const std::string& raw) {
  const std::string name = canonical_name(raw);
  int n = 0;
  if (name == "C" || name == "split-C" || name == "R+R" || name == "dual" || name == "tri3") return 1;
  if (name == "toep3" || name == "tri5") return 2;
  if (name == "tri4") return 3;
  if (detail::parse_int_suffix(name, "oplus", n)) return n;
  if (detail::parse_int_suffix(name, "uT", n)) return n - 1;
  return 0;
}

// Member of the normalized Proto-norm slice indexed by the closed-form parameters.
inline Mat table1_protonorm(const std::string& raw, const Vec& p) {
  const std::string name = canonical_name(raw);
  const AlgebraDef A = lookup(name);
  detail::need_params(name, p, table1_param_count(name));
  const int d = A.dim;
  Mat L = Mat::Zero(d, d);
  int n = 0;
  if (name == "R") {
    L(0, 0) = 1.0;
  } else if (name == "C") {
    L << 1, p[0], p[0], -1;
  } else if (name == "split-C") {
    L << 1, p[0], p[0], 1;
  } else if (name == "R+R" || name == "tri3") {
    L(0, 0) = 1 + p[0];
    L(1, 1) = 1 - p[0];
  } else if (name == "dual") {
    L << 1, p[0], p[0], 0;
  } else if (name == "H") {
    L = Vec::Constant(4, -1.0).asDiagonal();
    L(0, 0) = 1.0;
  } else if (name == "R2x2" || name == "R3x3") {
    L = detail::transpose_matrix(name == "R2x2" ? 2 : 3);
  } else if (detail::parse_int_suffix(name, "oplus", n)) {
    L = p.asDiagonal();
  } else if (name == "toep3") {
    Vec g(3);
    g << 1, p[0], p[1];
    L = hankel_protonorm(g);
  } else if (name == "tri4") {
    const double b = p[0], c = p[1], e = p[2];
    L << 1, b, c, e, b, 0, e / 2, 0, c, e / 2, 0, 0, e, 0, 0, 0;
  } else if (name == "tri5") {
    // (x,y,v,z,w); the off-diagonal couples x with z
    L(0, 0) = 1 + p[0];
    L(1, 1) = 1 - p[0];
    L(0, 3) = L(3, 0) = p[1];
  } else if (detail::parse_int_suffix(name, "uT", n)) {
    Vec g(n);
    g[0] = 1.0;
    g.tail(n - 1) = p;
    L = hankel_protonorm(g);
  } else if (A.rule.kind == RuleKind::ipsg) {
    L(0, 0) = 1.0;
    L.bottomRightCorner(d - 1, d - 1) = ipsg_Q(A.rule);
  } else {
    throw UnknownAlgebra("no closed-form row for " + raw);
  }
  return L;
}

inline double closed_form(const std::string& raw, const Vec& p, const Vec& s) {
  using detail::need;
  const std::string name = canonical_name(raw);
  const AlgebraDef A = lookup(name);
  detail::need_params(name, p, table1_param_count(name));
  check_dim(A, s);
  int n = 0;
  if (name == "R") {
    need(s[0] != 0.0, "x must be nonzero");
    return std::abs(s[0]);
  }
  if (name == "C") {
    need(s[0] > 0.0, "closed form valid only in the right half-plane");
    return std::hypot(s[0], s[1]) * std::exp(p[0] * std::atan(s[1] / s[0]));
  }
  if (name == "split-C") {
    need(s[0] > std::abs(s[1]), "needs x > |y|");
    return std::sqrt(s[0] * s[0] - s[1] * s[1]) * std::exp(p[0] * std::atanh(s[1] / s[0]));
  }
  if (name == "R+R" || name == "tri3") {
    need(s[0] > 0.0 && s[1] > 0.0, "needs x > 0 and y > 0");
    return std::sqrt(s[0] * s[1]) * std::pow(s[0] / s[1], p[0] / 2.0);
  }
  if (name == "dual") {
    need(s[0] > 0.0, "needs x > 0");
    return s[0] * std::exp(p[0] * s[1] / s[0]);
  }
  if (name == "H") return s.norm();
  if (name == "R2x2" || name == "R3x3") {
    const int m = name == "R2x2" ? 2 : 3;
    Mat M = Eigen::Map<const Mat>(s.data(), m, m);
    double det = M.determinant();
    need(det != 0.0, "singular matrix");
    return std::pow(std::abs(det), 1.0 / m);
  }
  if (detail::parse_int_suffix(name, "oplus", n)) {
    need(std::abs(p.sum() - n) < 1e-12, "exponents must sum to n");
    double lg = 0.0;
    for (int i = 0; i < n; ++i) {
      need(s[i] > 0.0, "components must be positive");
      lg += p[i] * std::log(s[i]);
    }
    return std::exp(lg / n);
  }
  if (name == "toep3") {
    need(s[0] > 0.0, "needs x > 0");
    const double x = s[0], z = s[1], w = s[2];
    return x * std::exp(p[0] * z / x + p[1] * w / x - p[1] * 0.5 * (z / x) * (z / x));
  }
  if (name == "tri4") {
    need(s[0] > 0.0, "needs x > 0");
    const double x = s[0], v = s[1], z = s[2], w = s[3];
    return x * std::exp(p[0] * v / x + p[1] * z / x + p[2] * w / x - p[2] / 2.0 * (z * v / (x * x)));
  }
  if (name == "tri5") {
    need(s[0] > 0.0 && s[1] > 0.0, "needs x > 0 and y > 0");
    const double x = s[0], y = s[1], z = s[3];
    return std::sqrt(x * y) * std::pow(x / y, p[0] / 2.0) * std::exp(p[1] / 2.0 * z / x);
  }
  if (detail::parse_int_suffix(name, "uT", n)) {
    Vec g(n);
    g[0] = 1.0;
    g.tail(n - 1) = p;
    need(s[0] > 0.0, "needs x_1 > 0");
    return log_series_norm(g, s);
  }
  if (A.rule.kind == RuleKind::ipsg) {
    double N = s[0] * s[0] - s.tail(A.dim - 1).dot(ipsg_Q(A.rule) * s.tail(A.dim - 1));
    return std::sqrt(std::abs(N));
  }
  throw UnknownAlgebra("no closed-form row for " + raw);
}

// Seeded member of the slice: free parameters uniform in [-1,1];
// oplus exponents are 1 + u_i recentred so they sum to n.
inline Vec sample_table1_params(const std::string& raw, Rng& rng) {
  const std::string name = canonical_name(raw);
  const int k = table1_param_count(name);
  Vec p(k);
  for (int i = 0; i < k; ++i) p[i] = rng.uniform(-1.0, 1.0);
  int n = 0;
  if (detail::parse_int_suffix(name, "oplus", n)) {
    p.array() -= p.mean();
    p.array() += 1.0;
    p[n - 1] = n - p.head(n - 1).sum();
  }
  return p;
}

}  // namespace unorm
