#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <unorm/suites.hpp>

#include "json_io.hpp"

namespace unorm::cli {

enum Exit { ok = 0, usage = 1, failed = 2 };

struct RunConfig {
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::string format = "csv";
  std::string out_path;

  std::string algebra;
  std::string target;
  std::string ideal_path;
  std::vector<double> params, point;
  std::string path = "segment";
  std::string rows = "all";
  int trials = -1;
  std::optional<double> v;

  std::string problem = "none";
  std::string spectrum = "i^-2";
  std::string method = "geomfp";
  std::optional<double> delta, epsilon;
  std::optional<int> k;
  int size = 200;
  std::vector<double> deltas{1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
};

namespace detail {

inline void emit(const std::vector<Table>& ts, const RunConfig& cfg, std::ostream& out) {
  std::string text;
  if (cfg.format == "json") {
    io::json j = io::json::array();
    for (const auto& t : ts) j.push_back(io::table_to_json(t));
    text = (ts.size() == 1 ? j[0] : j).dump(2) + "\n";
  } else if (ts.size() == 1) {
    text = ts[0].to_csv();
  } else {
    text = suites::to_csv(ts);
  }
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out_path, std::ios::binary);
  if (!f) throw Error("cannot write " + cfg.out_path);
  f << text;
}

inline void emit_json(const io::json& j, const RunConfig& cfg, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out_path, std::ios::binary);
  if (!f) throw Error("cannot write " + cfg.out_path);
  f << text;
}

inline int verdict(const std::vector<Table>& ts) {
  for (const auto& t : ts)
    if (!t.pass) return failed;
  return ok;
}

inline Vec to_vec(const std::vector<double>& v) {
  return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline std::string mat_entries(const Mat& M) {
  std::string s;
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j) s += (s.empty() ? "" : ";") + format_double(M(i, j));
  return s;
}

inline int trials_or(const RunConfig& c, int def) { return c.trials > 0 ? c.trials : def; }

}  // namespace detail

inline int algebra_list(const RunConfig& cfg, std::ostream& out) {
  Table t{"algebras", {"name", "dim", "inverse_rule", "associative", "one_norm_sq"}, {}, true};
  for (const auto& A : catalog())
    t.add({A.name, static_cast<long long>(A.dim), A.rule.tag(), is_associative(A), one_norm_sq(A)});
  detail::emit({t}, cfg, out);
  return ok;
}

inline int algebra_show(const RunConfig& cfg, std::ostream& out) {
  const AlgebraDef A = io::resolve_algebra(cfg.algebra);
  if (cfg.format == "json") {
    detail::emit_json(io::algebra_to_json(A), cfg, out);
    return ok;
  }
  Table t{"algebra", {"name", "dim", "inverse_rule", "associative", "one_norm_sq", "unity", "structure_constants"},
          {}, true};
  t.add({A.name, static_cast<long long>(A.dim), A.rule.tag(), is_associative(A), one_norm_sq(A), join_vec(A.unity),
         join_vec(Eigen::Map<const Vec>(A.sc.data(), static_cast<Eigen::Index>(A.sc.size())))});
  detail::emit({t}, cfg, out);
  return ok;
}

inline int protonorm_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const AlgebraDef A = io::resolve_algebra(cfg.algebra);
  ProtoNormFamily F = solve_family(A, cfg.seed);
  try {
    F = normalize_family(F, cfg.seed);
  } catch (const NoNormalizedSlice& e) {
    err << "note: " << e.what() << "\n";
  }
  if (cfg.format == "json") {
    io::json j = io::family_to_json(F);
    j["dimension"] = F.dimension();
    detail::emit_json(j, cfg, out);
    return ok;
  }
  Table t{"family", {"algebra", "dimension", "kind", "index", "entries"}, {}, true};
  const long long dim = F.dimension();
  for (size_t i = 0; i < F.basis.size(); ++i)
    t.add({A.name, dim, std::string("basis"), static_cast<long long>(i), detail::mat_entries(F.basis[i])});
  if (F.normalized_point)
    t.add({A.name, dim, std::string("normalized_point"), 0LL, detail::mat_entries(*F.normalized_point)});
  for (size_t i = 0; i < F.normalized_directions.size(); ++i)
    t.add({A.name, dim, std::string("normalized_direction"), static_cast<long long>(i),
           detail::mat_entries(F.normalized_directions[i])});
  detail::emit({t}, cfg, out);
  return ok;
}

inline int protonorm_transpose(const RunConfig& cfg, std::ostream& out) {
  const AlgebraDef A = io::resolve_algebra(cfg.algebra);
  const Mat P = transpose_induced(A);
  const ProtoNormFamily F = solve_family(A, cfg.seed);
  const double res = span_residual(F.basis, P) / P.norm();
  Table t{"transpose_induced", {"algebra", "family_dimension", "span_residual", "entries", "pass"}, {}, true};
  t.pass = res < cfg.tol.value_or(1e-8);
  t.add({A.name, static_cast<long long>(F.dimension()), res, detail::mat_entries(P), t.pass});
  detail::emit({t}, cfg, out);
  return detail::verdict({t});
}

inline int unorm_eval(const RunConfig& cfg, std::ostream& out) {
  const AlgebraDef A = lookup(cfg.algebra);
  const Vec p = detail::to_vec(cfg.params), s = detail::to_vec(cfg.point);
  check_dim(A, s, "point");
  const PathPolicy pol = cfg.path == "axis_polyline" ? PathPolicy::axis_polyline : PathPolicy::segment;
  const UnitalNormEvaluator E = make_evaluator(A, table1_protonorm(cfg.algebra, p), pol);
  const double numeric = evaluate(E, s);
  const double closed = closed_form(cfg.algebra, p, s);
  const double rel = std::abs(numeric - closed) / std::abs(closed);
  Table t{"eval", {"algebra", "params", "point", "numeric", "closed_form", "rel_err"}, {}, true};
  t.pass = rel < cfg.tol.value_or(1e-6);
  t.add({A.name, join_vec(p), join_vec(s), numeric, closed, rel});
  detail::emit({t}, cfg, out);
  return detail::verdict({t});
}

inline int unorm_verify(const RunConfig& cfg, std::ostream& out) {
  suites::Table1Tolerances tol;
  if (cfg.tol) tol.closed_form = *cfg.tol;
  const Table t = suites::table1_verify(suites::resolve_rows(cfg.rows), detail::trials_or(cfg, 100), cfg.seed, tol);
  detail::emit({t}, cfg, out);
  return detail::verdict({t});
}

inline int toeplitz_verify(const RunConfig& cfg, std::ostream& out) {
  const Table t = suites::toeplitz_verify(detail::trials_or(cfg, 100), cfg.seed, cfg.tol.value_or(1e-8));
  detail::emit({t}, cfg, out);
  return detail::verdict({t});
}

inline int functor_check(const RunConfig& cfg, std::ostream& out) {
  if (cfg.algebra.empty()) {
    const Table t = suites::functor_verify(cfg.seed);
    detail::emit({t}, cfg, out);
    return detail::verdict({t});
  }
  if (cfg.target.empty()) throw CLI::ValidationError("--target", "required together with --algebra");
  const AlgebraDef A1 = io::resolve_algebra(cfg.algebra), A2 = io::resolve_algebra(cfg.target);
  const ProtoNormFamily F1 = solve_family(A1, cfg.seed), F2 = solve_family(A2, cfg.seed);
  std::vector<Mat> extra;
  if (!cfg.ideal_path.empty()) {
    IdealSpec I{io::ideal_from_json(io::read_json_file(cfg.ideal_path))};
    const QuotientResult q = quotient_algebra(A1, I);
    if (q.K.rows() == A2.dim) extra.push_back(q.K);
  }
  Table t{"functor", {"source", "target", "verdict", "residual", "certificate"}, {}, true};
  std::string verdict = "not-established", cert;
  double residual = std::numeric_limits<double>::infinity();
  for (const auto& K : extra) {
    const MorphismVerdict v = morphism_exists(F1, F2, K);
    residual = v.witness_residual;
    if (v.exists) {
      verdict = "morphism";
      cert = "quotient";
    }
  }
  if (verdict != "morphism") {
    const ExclusionReport r = exclusion_report(F1, F2, extra, cfg.seed);
    for (const auto& c : r.candidates)
      if (c.exists) {
        verdict = "morphism";
        cert = "alignment";
        residual = c.witness_residual;
      }
    if (r.excluded) {
      verdict = "excluded";
      if (r.dimension_certificate) cert += "dimension;";
      if (r.rank_certificate) cert += "rank;";
      if (r.trace_certificate) cert += "trace;";
      cert.pop_back();
    }
  }
  t.add({A1.name, A2.name, verdict, residual, cert});
  detail::emit({t}, cfg, out);
  return ok;
}

namespace detail {

struct RegProblem {
  reg::SvdProblem P;
  std::optional<Vec> x_true;
};

inline Vec x_true_coeffs(int m) {
  Vec c(m);
  for (int i = 0; i < m; ++i) c[i] = std::pow(i + 1.0, -3.0);
  return c;
}

inline RegProblem load_reg_problem(const RunConfig& cfg) {
  RegProblem out;
  double delta = cfg.delta.value_or(1e-3);
  std::optional<double> eps = cfg.epsilon;
  std::uint64_t seed = cfg.seed;
  Mat F;
  std::optional<Svd> svd;
  std::optional<Vec> y;
  Rng rng(seed, 0x52554eULL);
  if (cfg.problem == "none") {
    reg::ExperimentSpec spec;
    spec.spectrum = reg::SpectralLaw::parse(cfg.spectrum);
    spec.n = spec.m = cfg.size;
    spec.seed = seed;
    reg::Experiment e = reg::build_experiment(spec);
    F = e.F;
    svd = e.svd;
    out.x_true = e.x_true;
    y = F * e.x_true + delta * e.noise_dir;
  } else {
    const io::json j = io::read_json_file(cfg.problem);
    if (j.contains("seed")) seed = j["seed"].get<std::uint64_t>();
    rng = Rng(seed, 0x52554eULL);
    if (j.contains("delta") && !cfg.delta) delta = j["delta"].get<double>();
    if (j.contains("epsilon") && !cfg.epsilon) eps = j["epsilon"].get<double>();
    if (j.contains("F")) {
      F = io::mat_from_json(j["F"]);
    } else {
      reg::ExperimentSpec spec;
      spec.spectrum = reg::SpectralLaw::parse(j.value("spectrum", cfg.spectrum));
      spec.n = spec.m = j.value("size", cfg.size);
      spec.seed = seed;
      reg::Experiment e = reg::build_experiment(spec);
      F = e.F;
      svd = e.svd;
      out.x_true = e.x_true;
    }
    if (j.contains("x_true")) out.x_true = io::vec_from_json(j["x_true"]);
    if (j.contains("y")) {
      y = io::vec_from_json(j["y"]);
    } else if (out.x_true) {
      if (out.x_true->size() != F.cols()) throw DimensionMismatch("x_true length must equal columns of F");
      y = F * *out.x_true + delta * rng.unit_vector(static_cast<int>(F.rows()));
    } else {
      throw Error("problem file needs y or x_true");
    }
  }
  const double e = eps.value_or(delta);
  out.P = svd ? reg::make_problem(F, *svd, *y, delta, e) : reg::make_problem(F, *y, delta, e);
  return out;
}

// Smallest k whose truncated residual is within delta.
inline int tsvd_discrepancy_k(const reg::SvdProblem& P) {
  const int r = reg::numerical_rank(P);
  for (int k = 0; k < r; ++k)
    if (reg::tsvd(P, k).discrepancy <= P.delta) return k;
  return r;
}

}  // namespace detail

inline int reg_run(const RunConfig& cfg, std::ostream& out) {
  const detail::RegProblem rp = detail::load_reg_problem(cfg);
  const reg::SvdProblem& P = rp.P;
  reg::RegularizedSolution x;
  if (cfg.method == "tikhonov")
    x = reg::tikhonov_discrepancy(P);
  else if (cfg.method == "tsvd")
    x = reg::tsvd(P, cfg.k.value_or(detail::tsvd_discrepancy_k(P)));
  else
    x = reg::geometric_fixed_point(P);
  Table t{"reg", {"method", "delta", "epsilon", "gamma", "retained_count", "discrepancy", "error"}, {}, true};
  const Cell error = rp.x_true ? Cell((x.x - *rp.x_true).norm()) : Cell(std::string(""));
  t.add({x.method, P.delta, P.epsilon, x.gamma_or_epsilon, static_cast<long long>(x.retained_indices.size()),
         x.discrepancy, error});
  detail::emit({t}, cfg, out);
  return ok;
}

inline int reg_converge(const RunConfig& cfg, std::ostream& out) {
  reg::ExperimentSpec spec;
  spec.spectrum = reg::SpectralLaw::parse(cfg.spectrum);
  spec.n = spec.m = cfg.size;
  spec.deltas = cfg.deltas;
  spec.seed = cfg.seed;
  const Table t = suites::convergence(spec);
  detail::emit({t}, cfg, out);
  return detail::verdict({t});
}

inline int antiwedge_verify(const RunConfig& cfg, std::ostream& out) {
  const Table t = suites::antiwedge_verify(detail::trials_or(cfg, 1000), cfg.seed, cfg.v, cfg.tol.value_or(1e-12));
  detail::emit({t}, cfg, out);
  return detail::verdict({t});
}

inline int suite(const RunConfig& cfg, std::ostream& out) {
  const auto ts = suites::full_suite(cfg.seed);
  detail::emit(ts, cfg, out);
  return detail::verdict(ts);
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Unital Norm toolkit: algebras, Proto-norm families, norms, functor checks, regularizers"};
  app.name("unorm");
  app.require_subcommand(1, 1);

  auto common = [&](CLI::App* s) {
    s->add_option("--seed", cfg.seed, "64-bit seed for all randomness")->capture_default_str();
    s->add_option("--tol", cfg.tol, "tolerance override for the primary check");
    s->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    s->add_option("--out", cfg.out_path, "write output to this path instead of stdout");
  };
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc) {
    CLI::App* s = parent->add_subcommand(name, desc);
    common(s);
    return s;
  };
  auto algebra_opt = [&](CLI::App* s, bool required) {
    auto* o = s->add_option("--algebra", cfg.algebra, "catalog id or algebra JSON file");
    if (required) o->required();
  };

  CLI::App* alg = app.add_subcommand("algebra", "catalog browsing")->require_subcommand(1, 1);
  CLI::App* alg_list = leaf(alg, "list", "list catalog algebras");
  CLI::App* alg_show = leaf(alg, "show", "print one algebra definition");
  algebra_opt(alg_show, true);

  CLI::App* pn = app.add_subcommand("protonorm", "Proto-norm families")->require_subcommand(1, 1);
  CLI::App* pn_solve = leaf(pn, "solve", "solve the Proto-norm family and its normalized slice");
  algebra_opt(pn_solve, true);
  CLI::App* pn_tr = leaf(pn, "transpose-induced", "transpose-induced Proto-norm and its family membership");
  algebra_opt(pn_tr, true);

  CLI::App* un = app.add_subcommand("unorm", "Unital Norm evaluation")->require_subcommand(1, 1);
  CLI::App* un_eval = leaf(un, "eval", "evaluate numeric and closed-form norms at a point");
  algebra_opt(un_eval, true);
  un_eval->add_option("--params", cfg.params, "closed-form parameters, comma separated")->delimiter(',');
  un_eval->add_option("--point", cfg.point, "element coordinates, comma separated")->delimiter(',')->required();
  un_eval->add_option("--path", cfg.path, "integration path")
      ->check(CLI::IsMember({"segment", "axis_polyline"}))
      ->capture_default_str();
  CLI::App* un_ver = leaf(un, "verify-table1", "closed-form agreement over seeded units per row");
  un_ver->add_option("--rows", cfg.rows, "all, table1, or comma-separated ids")->capture_default_str();
  un_ver->add_option("--trials", cfg.trials, "units per row (default 100)");

  CLI::App* tp = app.add_subcommand("toeplitz", "upper-triangular Toeplitz algebras")->require_subcommand(1, 1);
  CLI::App* tp_ver = leaf(tp, "verify", "log-series norm and fast inverse checks for n = 2..6");
  tp_ver->add_option("--trials", cfg.trials, "units per n (default 100)");

  CLI::App* fn = app.add_subcommand("functor", "category checks")->require_subcommand(1, 1);
  CLI::App* fn_check = leaf(fn, "check", "morphism/exclusion verdicts; without --algebra runs the worked examples");
  algebra_opt(fn_check, false);
  fn_check->add_option("--target", cfg.target, "target algebra id or file");
  fn_check->add_option("--ideal", cfg.ideal_path, "JSON list of coordinate vectors spanning the ideal");

  CLI::App* rg = app.add_subcommand("reg", "regularized inverse problems")->require_subcommand(1, 1);
  CLI::App* rg_run = leaf(rg, "run", "solve one problem");
  rg_run->add_option("--problem", cfg.problem, "problem JSON file, or none for a synthetic problem")
      ->capture_default_str();
  rg_run->add_option("--spectrum", cfg.spectrum, "singular value law i^-p")->capture_default_str();
  rg_run->add_option("--delta", cfg.delta, "noise level / discrepancy bound (default 1e-3)");
  rg_run->add_option("--epsilon", cfg.epsilon, "per-component noise scale (default delta)");
  rg_run->add_option("--method", cfg.method, "regularizer")
      ->check(CLI::IsMember({"tikhonov", "tsvd", "geomfp"}))
      ->capture_default_str();
  rg_run->add_option("--k", cfg.k, "tsvd truncation (default: discrepancy principle)");
  rg_run->add_option("--size", cfg.size, "synthetic problem size n = m")->capture_default_str();
  CLI::App* rg_conv = leaf(rg, "converge", "error table over descending deltas with epsilon = delta");
  rg_conv->add_option("--spectrum", cfg.spectrum, "singular value law i^-p")->capture_default_str();
  rg_conv->add_option("--size", cfg.size, "n = m")->capture_default_str();
  rg_conv->add_option("--deltas", cfg.deltas, "descending noise levels")->delimiter(',');

  CLI::App* aw = app.add_subcommand("antiwedge", "spacetime anti-wedge identities")->require_subcommand(1, 1);
  CLI::App* aw_ver = leaf(aw, "verify", "boost-invariance theorem over seeded triples");
  aw_ver->add_option("--trials", cfg.trials, "number of (a, b, v) triples (default 1000)");
  aw_ver->add_option("--v", cfg.v, "fixed boost speed, |v| < 1 (default: seeded in (-0.99, 0.99))");

  CLI::App* all = leaf(&app, "suite", "every verification suite at acceptance size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return usage;
  }

  try {
    if (alg_list->parsed()) return algebra_list(cfg, out);
    if (alg_show->parsed()) return algebra_show(cfg, out);
    if (pn_solve->parsed()) return protonorm_solve(cfg, out, err);
    if (pn_tr->parsed()) return protonorm_transpose(cfg, out);
    if (un_eval->parsed()) return unorm_eval(cfg, out);
    if (un_ver->parsed()) return unorm_verify(cfg, out);
    if (tp_ver->parsed()) return toeplitz_verify(cfg, out);
    if (fn_check->parsed()) return functor_check(cfg, out);
    if (rg_run->parsed()) return reg_run(cfg, out);
    if (rg_conv->parsed()) return reg_converge(cfg, out);
    if (aw_ver->parsed()) return antiwedge_verify(cfg, out);
    if (all->parsed()) return suite(cfg, out);
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  }
  err << app.help();
  return usage;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"unorm"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace unorm::cli
