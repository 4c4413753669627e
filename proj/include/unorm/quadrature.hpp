#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace unorm {

// 15-point Gauss-Legendre rule on [-1,1], nodes from Newton on P_15.
struct GaussLegendre15 {
  std::array<double, 15> x{}, w{};

  GaussLegendre15() {
    constexpr int n = 15;
    for (int i = 0; i < n; ++i) {
      double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      x[i] = z;
      w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
  }

  static const GaussLegendre15& get() {
    static const GaussLegendre15 rule;
    return rule;
  }

  template <class F>
  double apply(F&& f, double a, double b) const {
    const double h = 0.5 * (b - a), m = 0.5 * (a + b);
    double s = 0.0;
    for (int i = 0; i < 15; ++i) s += w[i] * f(m + h * x[i]);
    return h * s;
  }
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions = 0;
};

// Adaptive bisection: the panel with the largest |whole - (left + right)| is split
// until the summed estimate drops below rel_tol * max(1, |I|).
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double rel_tol, int max_subdivisions) {
  const auto& gl = GaussLegendre15::get();
  struct Panel {
    double a, b, whole, left, right;
    double err() const { return std::abs(whole - left - right); }
    double value() const { return left + right; }
  };
  auto make = [&](double lo, double hi, double whole) {
    double mid = 0.5 * (lo + hi);
    return Panel{lo, hi, whole, gl.apply(f, lo, mid), gl.apply(f, mid, hi)};
  };
  std::vector<Panel> panels{make(a, b, gl.apply(f, a, b))};
  QuadratureResult r;
  for (;;) {
    double total = 0.0, err = 0.0;
    size_t worst = 0;
    for (size_t i = 0; i < panels.size(); ++i) {
      total += panels[i].value();
      err += panels[i].err();
      if (panels[i].err() > panels[worst].err()) worst = i;
    }
    r.value = total;
    r.error_estimate = err;
    if (err <= rel_tol * std::max(1.0, std::abs(total))) return r;
    if (r.subdivisions >= max_subdivisions)
      throw QuadratureNonConvergent("error estimate " + std::to_string(err) + " after " +
                                    std::to_string(r.subdivisions) + " subdivisions");
    Panel p = panels[worst];
    double mid = 0.5 * (p.a + p.b);
    panels[worst] = make(p.a, mid, p.left);
    panels.push_back(make(mid, p.b, p.right));
    ++r.subdivisions;
  }
}

}  // namespace unorm
