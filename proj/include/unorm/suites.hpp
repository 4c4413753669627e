#pragma once

// Seeded verification suites shared by the CLI and the acceptance binary.
// Each returns a Table whose `pass` flag reflects its tolerances.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "antiwedge.hpp"
#include "catalog.hpp"
#include "closed_form.hpp"
#include "functor.hpp"
#include "protonorm.hpp"
#include "regularizer.hpp"
#include "table.hpp"
#include "toeplitz.hpp"
#include "unital_norm.hpp"

namespace unorm::suites {

// FNV-1a: a stable per-name stream id.
inline std::uint64_t stream_id(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
  return h;
}

inline std::optional<int> expected_family_dim(const std::string& raw) {
  const std::string name = canonical_name(raw);
  int n = 0;
  if (name == "R" || name == "H" || name == "R2x2" || name == "R3x3") return 1;
  if (name == "C" || name == "split-C" || name == "R+R" || name == "dual" || name == "tri3") return 2;
  if (name == "toep3" || name == "tri5") return 3;
  if (name == "tri4") return 4;
  if (detail::parse_int_suffix(name, "oplus", n) || detail::parse_int_suffix(name, "uT", n)) return n;
  return std::nullopt;
}

inline std::vector<std::string> table1_rows() {
  std::vector<std::string> out;
  for (const auto& n : catalog_names())
    if (expected_family_dim(n)) out.push_back(n);
  return out;
}

inline std::vector<std::string> resolve_rows(const std::string& spec) {
  if (spec == "all") return catalog_names();
  if (spec == "table1") return table1_rows();
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= spec.size()) {
    size_t end = spec.find(',', start);
    if (end == std::string::npos) end = spec.size();
    std::string item = spec.substr(start, end - start);
    if (!item.empty()) {
      lookup(item);  // throws UnknownAlgebra
      out.push_back(item);
    }
    start = end + 1;
  }
  return out;
}

inline Eigen::Index numeric_rank_of(const Vec& sv, double rel = 1e-8) {
  Eigen::Index r = 0;
  while (r < sv.size() && sv[r] > rel * sv[0]) ++r;
  return r;
}

inline Table family_dimensions(const std::vector<std::string>& rows, std::uint64_t seed) {
  Table t{"family_dimensions", {"algebra", "expected", "dimension", "rank_sigma_min_rel", "null_sigma_max_rel", "pass"},
          {},
          true};
  for (const auto& n : rows) {
    const ProtoNormFamily F = solve_family(lookup(n), seed);
    const auto e = expected_family_dim(n);
    const bool ok = !e || *e == F.dimension();
    // gap between the last kept and the first discarded singular value, relative to the largest
    const Vec& sv = F.singular_values;
    const Eigen::Index rank = static_cast<Eigen::Index>(sv.size()) == 0 ? 0 : numeric_rank_of(sv);
    const double top = sv.size() ? sv[0] : 1.0;
    const double lo = rank > 0 ? sv[rank - 1] / top : 0.0;
    const double hi = rank < sv.size() ? sv[rank] / top : 0.0;
    t.add({n, e ? Cell(static_cast<long long>(*e)) : Cell(std::string("")), static_cast<long long>(F.dimension()),
           lo, hi, ok});
    t.pass = t.pass && ok;
  }
  return t;
}

struct Table1Tolerances {
  double closed_form = 1e-6;
  double inverse_product = 1e-8;
  double homogeneity = 1e-8;
};

// Closed-form agreement, inverse-product identity and homogeneity per row.
inline Table table1_verify(const std::vector<std::string>& rows, int trials, std::uint64_t seed,
                           Table1Tolerances tol = {}) {
  Table t{"table1",
          {"algebra", "trials", "max_rel_err", "max_inverse_product", "max_homogeneity", "pass"},
          {},
          true};
  for (const auto& n : rows) {
    const AlgebraDef A = lookup(n);
    Rng rng(seed, stream_id(n));
    double rel = 0.0, ip = 0.0, hom = 0.0;
    for (int k = 0; k < trials; ++k) {
      const Vec p = sample_table1_params(n, rng);
      // radius 0.5 keeps x > 0 where a closed form needs the right half-plane
      const Vec s = sample_unit_near_one(A, 0.5, rng);
      const double alpha = rng.uniform(0.5, 2.0);
      const UnitalNormEvaluator E = make_evaluator(A, table1_protonorm(n, p));
      const double u = evaluate(E, s), c = closed_form(n, p, s);
      rel = std::max(rel, std::abs(u - c) / std::abs(c));
      ip = std::max(ip, inverse_product_check(E, s));
      const double ua = evaluate(E, alpha * s);
      hom = std::max(hom, std::abs(ua - alpha * u) / ua);
    }
    const bool ok = rel < tol.closed_form && ip < tol.inverse_product && hom < tol.homogeneity;
    t.add({n, static_cast<long long>(trials), rel, ip, hom, ok});
    t.pass = t.pass && ok;
  }
  return t;
}

// Unital decomposition on rows whose sampled slice member is nonsingular; members with
// cond(L) > max_cond count as singular since pinv(L) scales the gradient error by cond(L).
inline Table decomposition_verify(const std::vector<std::string>& rows, int trials, std::uint64_t seed,
                                  double tol = 1e-6, double max_cond = 1e6) {
  Table t{"decomposition", {"algebra", "trials", "max_residual", "max_sphere_dev", "pass"}, {}, true};
  for (const auto& n : rows) {
    const AlgebraDef A = lookup(n);
    Rng rng(seed, stream_id(n) ^ 0xdecULL);
    double res = 0.0, sph = 0.0;
    int used = 0;
    for (int k = 0; k < trials; ++k) {
      const Vec p = sample_table1_params(n, rng);
      const Mat L = table1_protonorm(n, p);
      const Vec s = sample_unit_near_one(A, 0.5, rng);
      const Svd sv = jacobi_svd(L);
      if (!(sv.s[A.dim - 1] > sv.s[0] / max_cond)) continue;
      const UnitalDecomposition d = unital_decomposition(make_evaluator(A, L), s);
      res = std::max(res, d.residual);
      sph = std::max(sph, std::abs(d.sphere_norm - 1.0));
      ++used;
    }
    const bool ok = res < tol && sph < tol;
    t.add({n, static_cast<long long>(used), res, sph, ok});
    t.pass = t.pass && ok;
  }
  return t;
}

inline Table toeplitz_verify(int trials, std::uint64_t seed, double tol = 1e-8, double inv_tol = 1e-12) {
  Table t{"toeplitz", {"n", "trials", "max_log_series_rel_err", "max_inverse_abs_diff", "pass"}, {}, true};
  for (int n = 2; n <= 6; ++n) {
    const std::string name = "uT" + std::to_string(n);
    const AlgebraDef A = lookup(name);
    Rng rng(seed, stream_id(name) ^ 0x70eULL);
    double rel = 0.0, inv = 0.0;
    for (int k = 0; k < trials; ++k) {
      Vec g(n);
      g[0] = 1.0;
      for (int i = 1; i < n; ++i) g[i] = rng.uniform(-1.0, 1.0);
      const Vec s = sample_unit_near_one(A, 0.5, rng);
      const double a = log_series_norm(g, s);
      const double b = evaluate(make_evaluator(A, hankel_protonorm(g)), s);
      rel = std::max(rel, std::abs(a - b) / std::abs(b));
      const Vec dense = left_mult_matrix(A, s).partialPivLu().solve(A.unity);
      inv = std::max(inv, (toeplitz_inverse(s) - dense).cwiseAbs().maxCoeff());
    }
    const bool ok = rel < tol && inv < inv_tol;
    t.add({static_cast<long long>(n), static_cast<long long>(trials), rel, inv, ok});
    t.pass = t.pass && ok;
  }
  return t;
}

struct FunctorCase {
  std::string source, target;
  std::vector<int> ideal;     // coordinate indices spanning the kernel
  bool expect_morphism;
  std::optional<Mat> K;       // explicit coordinate map when not a quotient
};

inline std::vector<FunctorCase> functor_cases() {
  Mat swap(2, 2);
  swap << 1, 1, 1, -1;
  return {
      {"R+R", "R", {1}, true, {}},
      {"A10", "A4", {2}, true, {}},
      {"A13", "A4", {2, 3, 4}, true, {}},
      {"A12", "D", {1, 3}, true, {}},
      {"A11", "A5", {2}, true, {}},
      {"split-C", "R+R", {}, true, swap},
      {"C", "R", {}, false, {}},
      {"A13", "A12", {}, false, {}},
      {"H", "C", {}, false, {}},
  };
}

inline Table functor_verify(std::uint64_t seed) {
  Table t{"functor", {"source", "target", "expected", "verdict", "residual", "certificate", "pass"}, {}, true};
  for (const auto& fc : functor_cases()) {
    const AlgebraDef A1 = lookup(fc.source), A2 = lookup(fc.target);
    const ProtoNormFamily F1 = solve_family(A1, seed), F2 = solve_family(A2, seed);
    std::string verdict, cert;
    double residual = 0.0;
    bool ok = false;
    if (fc.expect_morphism) {
      Mat K;
      if (fc.K) {
        K = *fc.K;
        cert = "explicit";
      } else {
        IdealSpec I;
        for (int i : fc.ideal) I.basis.push_back(Vec::Unit(A1.dim, i));
        K = quotient_algebra(A1, I).K;
        cert = "quotient";
      }
      const MorphismVerdict v = morphism_exists(F1, F2, K);
      residual = v.witness_residual;
      verdict = v.exists ? "morphism" : "not-established";
      ok = v.exists;
    } else {
      const ExclusionReport r = exclusion_report(F1, F2, {}, seed);
      verdict = r.excluded ? "excluded" : "not-established";
      if (r.dimension_certificate) cert += "dimension;";
      if (r.rank_certificate) cert += "rank;";
      if (r.trace_certificate) cert += "trace;";
      if (!cert.empty()) cert.pop_back();
      for (const auto& c : r.candidates) residual = std::max(residual, c.witness_residual);
      ok = r.excluded;
    }
    t.add({canonical_name(fc.source), canonical_name(fc.target),
           std::string(fc.expect_morphism ? "morphism" : "excluded"), verdict, residual, cert, ok});
    t.pass = t.pass && ok;
  }
  return t;
}

// Seeded problem for the fixed-point checks: no |u_i'y| lands in (2 eps, 4 eps].
inline reg::SvdProblem fixed_point_problem(std::uint64_t seed, int index) {
  Rng rng(seed, 0x4650ULL + static_cast<std::uint64_t>(index));
  const int n = 4 + static_cast<int>(rng.uniform() * 5);  // 4..8
  const int m = 3 + static_cast<int>(rng.uniform() * (n - 2));
  Mat U = reg::random_orthogonal(n, rng), V = reg::random_orthogonal(m, rng);
  Vec sig(m);
  for (int i = 0; i < m; ++i) sig[i] = rng.uniform(0.2, 1.5);
  std::sort(sig.data(), sig.data() + m, std::greater<>());
  Mat F = U.leftCols(m) * sig.asDiagonal() * V.transpose();
  Vec y(n);
  for (int i = 0; i < n; ++i) y[i] = rng.normal();
  reg::SvdProblem P = reg::make_problem(F, y, 0.0, 0.0);
  const Vec c = P.coeffs();
  double eps = rng.uniform(0.05, 0.3) * c.cwiseAbs().maxCoeff();
  auto in_band = [&](double e) {
    for (Eigen::Index i = 0; i < c.size(); ++i)
      if (std::abs(c[i]) > 2 * e && std::abs(c[i]) <= 4 * e * 1.05) return true;
    return false;
  };
  while (in_band(eps)) eps *= 0.8;
  P.epsilon = eps;
  P.delta = eps;
  return P;
}

inline Table fixed_point_verify(int problems, int starts, std::uint64_t seed, double fp_tol = 1e-10,
                                double crit_tol = 1e-8, int max_iter = 200) {
  Table t{"fixed_point",
          {"problem", "rows", "cols", "epsilon", "retained", "fixed_point_residual", "max_iterate_distance",
           "critical_sine", "statistical_identity", "pass"},
          {},
          true};
  for (int k = 0; k < problems; ++k) {
    const reg::SvdProblem P = fixed_point_problem(seed, k);
    const reg::RegularizedSolution x = reg::geometric_fixed_point(P);
    const double fp = reg::fixed_point_residual(P, x.x);
    Rng rng(seed, 0x57415254ULL + static_cast<std::uint64_t>(k));
    const Vec vp = P.svd.V.transpose() * x.x;
    double dist = 0.0;
    for (int s = 0; s < starts; ++s) {
      Vec z = vp;
      for (Eigen::Index i = 0; i < z.size(); ++i) z[i] *= 1.0 + 0.5 * rng.uniform(-1.0, 1.0);
      dist = std::max(dist, reg::iterate_A(P, P.svd.V * z, max_iter).final_distance);
    }
    const double crit = reg::critical_point_check(P, x);
    const double stat = reg::statistical_identity_residual(P, x);
    const bool ok = fp < fp_tol && dist < fp_tol && crit < crit_tol && stat < 1e-8;
    t.add({static_cast<long long>(k), static_cast<long long>(P.F.rows()), static_cast<long long>(P.F.cols()),
           P.epsilon, static_cast<long long>(x.retained_indices.size()), fp, dist, crit, stat, ok});
    t.pass = t.pass && ok;
  }
  return t;
}

inline Table convergence(const reg::ExperimentSpec& spec) {
  Table t{"convergence", {"method", "delta", "epsilon", "gamma", "retained_count", "discrepancy", "error"}, {}, true};
  const auto rows = reg::convergence_experiment(spec);
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    t.add({std::string("geomfp"), r.delta, r.epsilon, r.epsilon, static_cast<long long>(r.retained_count),
           r.discrepancy, r.error});
    if (i && !(r.error < rows[i - 1].error)) t.pass = false;
  }
  if (rows.size() >= 2 && !(rows.front().error >= 10.0 * rows.back().error)) t.pass = false;
  return t;
}

// Fixed speed when v is given, otherwise v uniform in (-0.99, 0.99).
inline Table antiwedge_verify(int trials, std::uint64_t seed, std::optional<double> v, double tol = 1e-12) {
  Table t{"antiwedge",
          {"trials", "max_parallel", "max_parallel_boost", "max_identity", "max_identity_boost", "max_self_wedge",
           "pass"},
          {},
          true};
  Rng rng(seed, 0x5354ULL);
  double r1 = 0, r2 = 0, r3 = 0, r4 = 0, sw = 0;
  for (int k = 0; k < trials; ++k) {
    sta::FourVector a, b;
    for (int i = 0; i < 4; ++i) a[i] = rng.uniform(-1.0, 1.0);
    for (int i = 0; i < 4; ++i) b[i] = rng.uniform(-1.0, 1.0);
    const double speed = v ? *v : rng.uniform(-0.99, 0.99);
    const sta::TheoremReport r = sta::verify_theorem(a, b, speed);
    r1 = std::max(r1, r.parallel_residual);
    r2 = std::max(r2, r.parallel_boost_residual);
    r3 = std::max(r3, r.identity_residual);
    r4 = std::max(r4, r.identity_boost_residual);
    sw = std::max(sw, std::abs(sta::self_wedge(sta::wedge(a, b))));
  }
  t.pass = std::max({r1, r2, r3, r4, sw}) < tol;
  t.add({static_cast<long long>(trials), r1, r2, r3, r4, sw, t.pass});
  return t;
}

// Every suite at its acceptance size, in a fixed order.
inline std::vector<Table> full_suite(std::uint64_t seed) {
  reg::ExperimentSpec spec;
  spec.spectrum = reg::SpectralLaw::parse("i^-2");
  spec.seed = seed;
  return {family_dimensions(catalog_names(), seed),
          table1_verify(catalog_names(), 100, seed),
          decomposition_verify(catalog_names(), 10, seed),
          toeplitz_verify(100, seed),
          functor_verify(seed),
          fixed_point_verify(20, 10, seed),
          convergence(spec),
          antiwedge_verify(1000, seed, std::nullopt)};
}

inline std::string to_csv(const std::vector<Table>& ts) {
  std::string out;
  for (const auto& t : ts) out += "# " + t.name + "\n" + t.to_csv();
  return out;
}

}  // namespace unorm::suites
