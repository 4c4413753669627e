// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <sstream>
#include <string>

#include <unorm/suites.hpp>

#include "cli.hpp"

using namespace unorm;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double column_max(const Table& t, const std::string& col) {
  size_t c = 0;
  while (c < t.columns.size() && t.columns[c] != col) ++c;
  double m = 0.0;
  for (const auto& r : t.rows)
    if (const double* d = std::get_if<double>(&r.at(c))) m = std::max(m, *d);
  return m;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  const auto rows = catalog_names();

  {
    Table t;
    const double s = seconds([&] { t = suites::family_dimensions(rows, 0); });
    int bad = 0;
    for (const auto& r : t.rows)
      if (!std::get<bool>(r.back())) ++bad;
    report(1, t.pass && s < 60.0,
           std::to_string(t.rows.size() - bad) + "/" + std::to_string(t.rows.size()) +
               " family dimensions match" + fmt(", %.2f s (limit 60 s)", s));
  }

  {
    const Table t = suites::table1_verify(rows, 100, 0, {1e-6, 1e-8, 1e-8});
    report(2, column_max(t, "max_rel_err") < 1e-6,
           fmt("max relative error vs closed form %.3g (limit 1e-6), 100 units per row", column_max(t, "max_rel_err")));

    double ip = column_max(t, "max_inverse_product"), hom = column_max(t, "max_homogeneity");
    for (std::uint64_t seed : {1, 2}) {
      const Table u = suites::table1_verify(rows, 20, seed, {1e-6, 1e-8, 1e-8});
      ip = std::max(ip, column_max(u, "max_inverse_product"));
      hom = std::max(hom, column_max(u, "max_homogeneity"));
    }
    report(3, ip < 1e-8 && hom < 1e-8,
           fmt("max inverse-product %.3g, max homogeneity %.3g (limit 1e-8), seeds 0-2", ip, hom));
  }

  {
    const Table t = suites::decomposition_verify(rows, 10, 0, 1e-6);
    report(4, t.pass,
           fmt("max decomposition residual %.3g, max sphere deviation %.3g (limit 1e-6)",
               column_max(t, "max_residual"), column_max(t, "max_sphere_dev")));
  }

  {
    const Table t = suites::toeplitz_verify(100, 0, 1e-8, 1e-12);
    report(5, t.pass,
           fmt("max log-series rel error %.3g (limit 1e-8), max inverse diff %.3g (limit 1e-12)",
               column_max(t, "max_log_series_rel_err"), column_max(t, "max_inverse_abs_diff")));
  }

  {
    const Table t = suites::functor_verify(0);
    int good = 0;
    for (const auto& r : t.rows) good += std::get<bool>(r.back());
    report(6, t.pass && good == 9, std::to_string(good) + "/9 functor verdicts correct");
  }

  {
    const Table t = suites::fixed_point_verify(20, 10, 0, 1e-10, 1e-8, 200);
    report(7, t.pass,
           fmt("20 problems: max fixed-point residual %.3g, max iterate distance %.3g, max critical sine %.3g",
               column_max(t, "fixed_point_residual"), column_max(t, "max_iterate_distance"),
               column_max(t, "critical_sine")));
  }

  {
    reg::ExperimentSpec spec;
    spec.spectrum = reg::SpectralLaw::parse("i^-2");
    Table t;
    const double s = seconds([&] { t = suites::convergence(spec); });
    const double first = std::get<double>(t.rows.front().back()), last = std::get<double>(t.rows.back().back());
    report(8, t.pass && s < 30.0,
           fmt("error %.3g -> %.3g (ratio %.1f, strictly decreasing required)", first, last, first / last) +
               fmt(", %.2f s (limit 30 s)", s));
  }

  {
    const Table t = suites::antiwedge_verify(1000, 0, std::nullopt, 1e-12);
    const double worst = std::max({column_max(t, "max_parallel"), column_max(t, "max_parallel_boost"),
                                   column_max(t, "max_identity"), column_max(t, "max_identity_boost")});
    report(9, t.pass, fmt("max residual %.3g over 1000 triples (limit 1e-12)", worst));
  }

  {
    std::ostringstream a, b, e;
    const int ca = cli::run({"suite", "--seed", "0"}, a, e);
    const int cb = cli::run({"suite", "--seed", "0"}, b, e);
    const bool same = a.str() == b.str() && !a.str().empty();
    report(10, same && ca == cb,
           std::string(same ? "identical" : "differing") + " CSV across two seed-0 suite runs (" +
               std::to_string(a.str().size()) + " bytes)");
  }

  std::printf("%d/10 criteria passed\n", 10 - failures);
  return failures ? 1 : 0;
}
