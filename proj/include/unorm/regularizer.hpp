#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"
#include "svd.hpp"

namespace unorm::reg {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct SvdProblem {
  Mat F;
  Svd svd;
  Vec y;
  double delta = 0.0;
  double epsilon = 0.0;

  Vec coeffs() const { return svd.U.transpose() * y; }  // u_i'y
  Eigen::Index k() const { return svd.s.size(); }
};

struct RegularizedSolution {
  Vec x;
  std::string method;
  double gamma_or_epsilon = 0.0;
  std::vector<int> retained_indices;
  double discrepancy = 0.0;
};

inline SvdProblem make_problem(Mat F, Vec y, double delta, double epsilon) {
  if (F.rows() != y.size()) throw DimensionMismatch("y length must equal rows of F");
  SvdProblem P;
  P.svd = jacobi_svd(F);
  P.F = std::move(F);
  P.y = std::move(y);
  P.delta = delta;
  P.epsilon = epsilon;
  return P;
}

inline SvdProblem make_problem(Mat F, Svd svd, Vec y, double delta, double epsilon) {
  if (F.rows() != y.size()) throw DimensionMismatch("y length must equal rows of F");
  return SvdProblem{std::move(F), std::move(svd), std::move(y), delta, epsilon};
}

inline double svd_reconstruction_error(const SvdProblem& P) {
  return (P.svd.U * P.svd.s.asDiagonal() * P.svd.V.transpose() - P.F).norm();
}

inline RegularizedSolution finish(const SvdProblem& P, Vec x, std::string method, double param,
                                  std::vector<int> retained) {
  RegularizedSolution r;
  r.discrepancy = (P.F * x - P.y).norm();
  r.x = std::move(x);
  r.method = std::move(method);
  r.gamma_or_epsilon = param;
  r.retained_indices = std::move(retained);
  return r;
}

inline double tikhonov_discrepancy_at(const SvdProblem& P, double gamma) {
  const Vec c = P.coeffs();
  const double perp2 = std::max(0.0, P.y.squaredNorm() - c.squaredNorm());
  double r2 = perp2;
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    double s2 = P.svd.s[i] * P.svd.s[i];
    double f = gamma / (s2 + gamma);
    r2 += f * f * c[i] * c[i];
  }
  return std::sqrt(r2);
}

inline Vec tikhonov_solution(const SvdProblem& P, double gamma) {
  const Vec c = P.coeffs();
  Vec x = Vec::Zero(P.F.cols());
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    const double s = P.svd.s[i];
    if (s == 0.0) continue;
    x += (s * c[i] / (s * s + gamma)) * P.svd.V.col(i);
  }
  return x;
}

inline RegularizedSolution tsvd(const SvdProblem& P, int k) {
  if (k < 0 || k > P.k()) throw std::invalid_argument("tsvd rank out of range");
  const Vec c = P.coeffs();
  Vec x = Vec::Zero(P.F.cols());
  std::vector<int> kept;
  for (int i = 0; i < k; ++i) {
    if (P.svd.s[i] == 0.0) throw std::invalid_argument("tsvd k exceeds rank(F)");
    x += (c[i] / P.svd.s[i]) * P.svd.V.col(i);
    kept.push_back(i);
  }
  return finish(P, x, "tsvd", k, kept);
}

inline int numerical_rank(const SvdProblem& P) {
  int r = 0;
  const double smax = P.k() ? P.svd.s[0] : 0.0;
  while (r < P.k() && P.svd.s[r] > smax * 1e-14 * std::max(P.F.rows(), P.F.cols())) ++r;
  return r;
}

// gamma by bisection in log space on the monotone discrepancy function.
inline RegularizedSolution tikhonov_discrepancy(const SvdProblem& P) {
  const double ny = P.y.norm();
  const double tol = 1e-10 * ny;
  const int rank = numerical_rank(P);
  const Vec c = P.coeffs();
  const double rmin = std::sqrt(std::max(0.0, P.y.squaredNorm() - c.head(rank).squaredNorm()));
  if (P.delta > ny + tol || P.delta + tol < rmin)
    throw DeltaOutOfRange("delta " + std::to_string(P.delta) + " outside [" + std::to_string(rmin) + ", " +
                          std::to_string(ny) + "]");
  if (P.delta >= ny - tol)
    return finish(P, Vec::Zero(P.F.cols()), "tikhonov", std::numeric_limits<double>::infinity(), {});
  std::vector<int> all(rank);
  for (int i = 0; i < rank; ++i) all[i] = i;
  if (P.delta <= rmin + tol) return finish(P, tsvd(P, rank).x, "tikhonov", 0.0, all);

  const double smax2 = P.svd.s[0] * P.svd.s[0];
  double lo = smax2 * 1e-16, hi = smax2;
  for (int i = 0; i < 200 && tikhonov_discrepancy_at(P, lo) > P.delta; ++i) lo *= 1e-4;
  for (int i = 0; i < 200 && tikhonov_discrepancy_at(P, hi) < P.delta; ++i) hi *= 1e4;
  double rlo = tikhonov_discrepancy_at(P, lo), rhi = tikhonov_discrepancy_at(P, hi);
  double gamma = std::sqrt(lo * hi);
  for (int it = 0; it < 2000; ++it) {
    gamma = std::sqrt(lo * hi);
    const double r = tikhonov_discrepancy_at(P, gamma);
    if (!(rlo <= r + tol && r <= rhi + tol)) throw std::logic_error("discrepancy not monotone in gamma");
    if (std::abs(r - P.delta) < tol) break;
    if (r < P.delta) {
      lo = gamma;
      rlo = r;
    } else {
      hi = gamma;
      rhi = r;
    }
    if (hi / lo - 1.0 < 1e-15) break;
  }
  return finish(P, tikhonov_solution(P, gamma), "tikhonov", gamma, all);
}

// Retained set {i : |u_i'y| > 2 eps}, largest-magnitude root of each component.
inline RegularizedSolution geometric_fixed_point(const SvdProblem& P) {
  const double eps = P.epsilon;
  if (eps < 0.0) throw std::invalid_argument("epsilon must be nonnegative");
  const Vec c = P.coeffs();
  Vec x = Vec::Zero(P.F.cols());
  std::vector<int> kept;
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    const double s = P.svd.s[i];
    if (s == 0.0 || !(std::abs(c[i]) > 2.0 * eps)) continue;
    const double root = std::sqrt(c[i] * c[i] - 4.0 * eps * eps);
    const double z = 0.5 * (c[i] + std::copysign(root, c[i]));
    x += (z / s) * P.svd.V.col(i);
    kept.push_back(static_cast<int>(i));
  }
  return finish(P, x, "geomfp", eps, kept);
}

// One application of A_eps in spectral form; zero coordinates stay zero.
inline Vec apply_A(const SvdProblem& P, const Vec& w) {
  const double eps2 = P.epsilon * P.epsilon;
  const Vec c = P.coeffs();
  const Vec vw = P.svd.V.transpose() * w;
  Vec out = Vec::Zero(P.F.cols());
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    const double s = P.svd.s[i];
    if (vw[i] == 0.0 || s == 0.0) continue;
    const double coeff = s * c[i] / (s * s + eps2 / (vw[i] * vw[i]));
    out += coeff * P.svd.V.col(i);
  }
  return out;
}

inline double fixed_point_residual(const SvdProblem& P, const Vec& p) { return (apply_A(P, p) - p).norm(); }

struct IterateResult {
  std::vector<Vec> sequence;        // w0, A[w0], ...
  std::vector<double> distances;    // per iterate, on the attracting components
  std::vector<int> attracting;      // |u_i'y| > 4 eps
  std::vector<int> near_threshold;  // 2 eps < |u_i'y| <= 4 eps, retained but not certified
  double final_distance = 0.0;
};

inline IterateResult iterate_A(const SvdProblem& P, const Vec& w0, int n_iter) {
  if (w0.size() != P.F.cols()) throw DimensionMismatch("w0 length must equal columns of F");
  IterateResult r;
  const Vec c = P.coeffs();
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    if (P.svd.s[i] == 0.0) continue;
    if (std::abs(c[i]) > 4.0 * P.epsilon)
      r.attracting.push_back(static_cast<int>(i));
    else if (std::abs(c[i]) > 2.0 * P.epsilon)
      r.near_threshold.push_back(static_cast<int>(i));
  }
  const Vec p = geometric_fixed_point(P).x;
  const Vec vp = P.svd.V.transpose() * p;
  auto dist = [&](const Vec& w) {
    Vec vw = P.svd.V.transpose() * w;
    double d2 = 0.0;
    for (int i : r.attracting) d2 += (vw[i] - vp[i]) * (vw[i] - vp[i]);
    return std::sqrt(d2);
  };
  Vec w = w0;
  r.sequence.push_back(w);
  r.distances.push_back(dist(w));
  for (int it = 0; it < n_iter; ++it) {
    w = apply_A(P, w);
    r.sequence.push_back(w);
    r.distances.push_back(dist(w));
  }
  r.final_distance = r.distances.back();
  return r;
}

// 2 eps^2 |s v'p| |u'y| / (s^2 (v'p)^2 + eps^2)^2 per retained component.
inline std::vector<double> attraction_factors(const SvdProblem& P, const RegularizedSolution& x) {
  const Vec c = P.coeffs();
  const Vec vp = P.svd.V.transpose() * x.x;
  const double e2 = P.epsilon * P.epsilon;
  std::vector<double> out;
  for (int i : x.retained_indices) {
    const double z = P.svd.s[i] * vp[i];
    out.push_back(2.0 * e2 * std::abs(z) * std::abs(c[i]) / std::pow(z * z + e2, 2));
  }
  return out;
}

// Sine of the angle between grad prod|z_i| and grad ||F z - y||^2 on the retained subspace.
inline double critical_point_check(const SvdProblem& P, const RegularizedSolution& x) {
  if (x.retained_indices.empty()) throw std::invalid_argument("critical_point_check needs a retained set");
  const Vec c = P.coeffs();
  const Vec vp = P.svd.V.transpose() * x.x;
  const Eigen::Index n = static_cast<Eigen::Index>(x.retained_indices.size());
  Vec g(n), h(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const int i = x.retained_indices[k];
    if (vp[i] == 0.0) throw DegenerateCoordinate("retained coordinate " + std::to_string(i) + " is zero");
    g[k] = 1.0 / vp[i];
    const double s = P.svd.s[i];
    h[k] = 2.0 * s * (s * vp[i] - c[i]);
  }
  if (h.norm() == 0.0) throw DegenerateCoordinate("discrepancy gradient vanishes");
  const Vec gh = g.normalized(), hh = h.normalized();
  return (gh - gh.dot(hh) * hh).norm();
}

// Relative gap between p_hat and (F_hat'F_hat + eps^2 C^-1)^-1 F_hat'y on the retained subspace.
inline double statistical_identity_residual(const SvdProblem& P, const RegularizedSolution& x) {
  const Eigen::Index n = static_cast<Eigen::Index>(x.retained_indices.size());
  if (n == 0) return 0.0;
  Mat Vr(P.F.cols(), n);
  for (Eigen::Index k = 0; k < n; ++k) Vr.col(k) = P.svd.V.col(x.retained_indices[k]);
  const Mat Fh = P.F * Vr;
  const Vec ph = Vr.transpose() * x.x;
  Mat M = Fh.transpose() * Fh;
  for (Eigen::Index k = 0; k < n; ++k) M(k, k) += P.epsilon * P.epsilon / (ph[k] * ph[k]);
  const Vec rhs = Fh.transpose() * P.y;
  const Vec sol = M.ldlt().solve(rhs);
  return (sol - ph).norm() / ph.norm();
}

// Haar-like orthogonal matrix: Q of a Gaussian matrix with sign-normalized R.
inline Mat random_orthogonal(int n, Rng& rng) {
  Mat G(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) G(i, j) = rng.normal();
  Eigen::HouseholderQR<Mat> qr(G);
  Mat Q = qr.householderQ() * Mat::Identity(n, n);
  const Mat R = qr.matrixQR();
  for (int j = 0; j < n; ++j)
    if (R(j, j) < 0.0) Q.col(j) = -Q.col(j);
  return Q;
}

struct SpectralLaw {
  double power = 2.0;  // sigma_i = i^-power
  static SpectralLaw parse(const std::string& s) {
    // accepts "i^-p"
    if (s.rfind("i^-", 0) != 0) throw std::invalid_argument("spectrum law must look like i^-p, got " + s);
    SpectralLaw l;
    l.power = std::stod(s.substr(3));
    if (!(l.power > 0.0)) throw std::invalid_argument("spectrum exponent must be positive");
    return l;
  }
  double operator()(int i) const { return std::pow(static_cast<double>(i), -power); }
};

struct ExperimentSpec {
  SpectralLaw spectrum;
  int n = 200, m = 200;
  double x_power = 3.0;  // v_i' x_true = i^-x_power; 0 disables (x_true = 0)
  bool zero_signal = false;
  std::vector<double> deltas{1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
  std::uint64_t seed = 0;
};

struct ExperimentRow {
  double delta = 0.0, epsilon = 0.0;
  int retained_count = 0;
  double discrepancy = 0.0, error = 0.0;
};

struct Experiment {
  Mat F;
  Svd svd;
  Vec x_true;
  Vec noise_dir;
};

inline Experiment build_experiment(const ExperimentSpec& spec) {
  Rng rng(spec.seed, 0x434f4e56ULL);
  Experiment e;
  const int k = std::min(spec.n, spec.m);
  Mat U = random_orthogonal(spec.n, rng);
  Mat V = random_orthogonal(spec.m, rng);
  Vec sig(k);
  for (int i = 0; i < k; ++i) sig[i] = spec.spectrum(i + 1);
  e.F = U.leftCols(k) * sig.asDiagonal() * V.leftCols(k).transpose();
  e.svd = jacobi_svd(e.F);
  Vec coeff = Vec::Zero(spec.m);
  if (!spec.zero_signal)
    for (int i = 0; i < k; ++i) coeff[i] = std::pow(i + 1.0, -spec.x_power);
  e.x_true = V * coeff;
  e.noise_dir = rng.unit_vector(spec.n);
  return e;
}

inline std::vector<ExperimentRow> convergence_experiment(const ExperimentSpec& spec) {
  for (size_t i = 0; i < spec.deltas.size(); ++i) {
    if (spec.deltas[i] < 0.0) throw std::invalid_argument("deltas must be nonnegative");
    if (i && !(spec.deltas[i] < spec.deltas[i - 1])) throw std::invalid_argument("deltas must be descending");
  }
  const Experiment e = build_experiment(spec);
  const Vec clean = e.F * e.x_true;
  std::vector<ExperimentRow> rows;
  for (double d : spec.deltas) {
    SvdProblem P = make_problem(e.F, e.svd, clean + d * e.noise_dir, d, d);
    RegularizedSolution x = geometric_fixed_point(P);
    rows.push_back({d, d, static_cast<int>(x.retained_indices.size()), x.discrepancy, (x.x - e.x_true).norm()});
  }
  return rows;
}

}  // namespace unorm::reg
