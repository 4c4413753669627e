#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "errors.hpp"

namespace unorm::sta {

// (a_tau, a_x, a_y, a_z) on gamma_0..gamma_3; gamma_1 is the boost direction.
using FourVector = std::array<double, 4>;
using Spatial = std::array<double, 3>;

// Components keyed 01, 02, 03, 12, 13, 23.
struct Bivector {
  std::array<double, 6> c{};
  static constexpr std::array<const char*, 6> keys{"01", "02", "03", "12", "13", "23"};
  double operator[](int k) const { return c[k]; }
};

inline double det2(double a, double b, double c, double d) { return a * d - b * c; }

inline double minkowski_inner(const FourVector& a, const FourVector& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

// a^b with the component for (p,q) written as -det[[b_p, b_q],[a_p, a_q]].
inline Bivector wedge(const FourVector& a, const FourVector& b) {
  static constexpr int P[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  Bivector w;
  for (int k = 0; k < 6; ++k) {
    const int p = P[k][0], q = P[k][1];
    w.c[k] = -det2(b[p], b[q], a[p], a[q]);
  }
  return w;
}

inline Spatial anti_wedge(const FourVector& a, const FourVector& b) {
  return {det2(b[0], b[1], a[0], a[1]), det2(b[0], b[2], a[0], a[2]), det2(b[0], b[3], a[0], a[3])};
}

inline FourVector time_boost_reflection(const FourVector& a) { return {a[1], a[0], a[2], a[3]}; }

inline FourVector boost(const FourVector& a, double v) {
  if (!(std::abs(v) < 1.0)) throw SpeedOutOfRange("|v| must be < 1, got " + std::to_string(v));
  const double g = 1.0 / std::sqrt(1.0 - v * v);
  return {(a[0] - v * a[1]) * g, (a[1] - v * a[0]) * g, a[2], a[3]};
}

// Area factors on the 0-1 and 2-3 planes.
inline double A01(const FourVector& a, const FourVector& b) { return det2(b[0], b[1], a[0], a[1]); }
inline double A23(const FourVector& a, const FourVector& b) { return det2(b[2], b[3], a[2], a[3]); }

// gamma_2 ^ gamma_3 coefficient of p^q for p, q in span{gamma_2, gamma_3}.
inline double perp_wedge(const Spatial& p, const Spatial& q) { return p[1] * q[2] - p[2] * q[1]; }

// (a^b)^(a^b) coefficient: D01 D23 - D02 D13 + D03 D12.
inline double self_wedge(const Bivector& w) { return w[0] * w[5] - w[1] * w[4] + w[2] * w[3]; }

struct TheoremReport {
  double a01 = 0.0, a23 = 0.0;
  double parallel_residual = 0.0;        // (i)
  double parallel_boost_residual = 0.0;  // (ii)
  double identity_residual = 0.0;        // (iii)
  double identity_boost_residual = 0.0;  // (iv)
  double max_residual() const {
    return std::max({parallel_residual, parallel_boost_residual, identity_residual, identity_boost_residual});
  }
};

inline TheoremReport verify_theorem(const FourVector& a, const FourVector& b, double v) {
  TheoremReport r;
  const FourVector ah = time_boost_reflection(a), bh = time_boost_reflection(b);
  const Spatial w = anti_wedge(a, b), wh = anti_wedge(ah, bh);
  r.a01 = A01(a, b);
  r.a23 = A23(a, b);
  r.parallel_residual = std::max(std::abs(w[0] - r.a01), std::abs(wh[0] + r.a01));

  const FourVector ab = boost(a, v), bb = boost(b, v);
  const Spatial wb = anti_wedge(ab, bb), wbh = anti_wedge(time_boost_reflection(ab), time_boost_reflection(bb));
  r.parallel_boost_residual = std::abs(std::abs(wb[0]) - std::abs(w[0]));

  const double lhs = perp_wedge(w, wh);
  r.identity_residual = std::abs(lhs - r.a01 * r.a23);
  const double lhs_b = perp_wedge(wb, wbh);
  r.identity_boost_residual = std::max(std::abs(lhs_b - lhs), std::abs(lhs_b - A01(ab, bb) * A23(ab, bb)));
  return r;
}

}  // namespace unorm::sta
