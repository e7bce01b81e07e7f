// Acceptance suite: every release criterion with its pinned tolerance, one
// pass/fail line each. Exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "orbivol/bounds.hpp"
#include "orbivol/elliptic.hpp"
#include "orbivol/lorentz.hpp"
#include "orbivol/verify.hpp"
#include "oracles.hpp"

using namespace orbivol;

namespace {

constexpr double kPi = std::numbers::pi;

int failures = 0;

void report(const std::string& name, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::printf("[%s] %-28s %s\n", pass ? "PASS" : "FAIL", name.c_str(),
              detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// --- criteria -------------------------------------------------------------

void criterion_tau() {
  const double tau = jorgensen_tau();
  const double residual = std::abs(2.0 * tau * (1.0 + tau) * (1.0 + tau) - 1.0);
  double best_elapsed = 1e9;
  for (int rep = 0; rep < 50; ++rep) {
    const auto start = std::chrono::steady_clock::now();
    volatile double sink = jorgensen_tau();
    (void)sink;
    best_elapsed = std::min(best_elapsed, seconds_since(start));
  }
  const bool pass = residual <= 1e-13 && tau > 0.2971 && best_elapsed < 1e-3;
  report("tau-root-and-remark", pass,
         "residual=" + fmt(residual) + " tau=" + fmt(tau) +
             " call=" + fmt(best_elapsed * 1e3) + "ms");
}

void criterion_ck() {
  const double err = std::abs(c_k(2) - 2.0 * std::exp(-2.0));
  bool decreasing = true;
  for (int k = 2; k < 100; ++k)
    if (!(c_k(k + 1) < c_k(k))) decreasing = false;
  report("c_k-value-and-decrease", err <= 1e-12 && decreasing,
         "|c_2 - 2e^-2|=" + fmt(err) + (decreasing ? ", strictly decreasing" :
                                                      ", NOT decreasing"));
}

void criterion_boost_norm() {
  double worst = 0.0;
  for (const double d : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    const double got = operator_norm(boost(3, d));
    worst = std::max(worst, std::abs(got - std::exp(d)) / std::exp(d));
  }
  report("boost-norm-exp-delta", worst <= 1e-9, "max rel err=" + fmt(worst));
}

void criterion_elliptic_suite() {
  const auto start = std::chrono::steady_clock::now();
  long violations = 0;
  double min_slack = 1e300;
  long trials_total = 0;
  for (int n = 2; n <= 6; ++n) {
    for (const int k : {2, 3, 5, 7}) {
      const auto report_nk = verify::check_elliptic_bounds(n, k, 10000, 2026);
      violations += report_nk.violations;
      trials_total += report_nk.trials;
      min_slack = std::min(min_slack, report_nk.min_slack);
    }
  }
  const double elapsed = seconds_since(start);
  const bool pass = violations == 0 && elapsed < 120.0;
  report("elliptic-bound-suite", pass,
         std::to_string(trials_total) + " samples, violations=" +
             std::to_string(violations) + ", min_slack=" + fmt(min_slack) +
             ", " + fmt(elapsed) + "s");
}

void criterion_equality_witness() {
  double worst = 0.0;
  for (const int k : {2, 3, 4, 5, 7, 12}) {
    EllipticSpec spec;
    spec.n = 2;
    if (k == 2) {
      spec.flips = 1;
      spec.fixed = 1;
    } else {
      spec.angles = {2.0 * kPi / k};
    }
    const LorentzMatrix a = block_form(spec);
    const double lhs = operator_norm(a.matrix() - Matrix::identity(3));
    worst = std::max(worst, std::abs(lhs - 2.0 * std::sin(kPi / k)));
  }
  report("equality-witness-2sin", worst <= 1e-12, "max |err|=" + fmt(worst));
}

void criterion_entry_bound_suite() {
  long violations = 0;
  double min_slack = 1e300;
  for (const int n : {2, 3, 5}) {
    for (const double r : {0.25, 1.0, 3.0}) {
      const auto rep = verify::check_entry_bound(n, r, 10000, 2026);
      violations += rep.violations;
      min_slack = std::min(min_slack, rep.min_slack);
    }
  }
  report("entry-bound-suite", violations == 0,
         "90000 samples, violations=" + std::to_string(violations) +
             ", min_slack=" + fmt(min_slack));
}

void criterion_lemma_323334() {
  long violations = 0;
  violations += verify::check_norm_from_entries(3, 1.0, 10000, 2026).violations;
  violations += verify::check_norm_from_entries(5, 0.5, 10000, 2026).violations;
  violations += verify::check_product_perturbation(3, 10.0, 0.1, 10000, 2026).violations;
  violations += verify::check_product_perturbation(2, 5.0, 0.05, 10000, 2026).violations;
  const auto greedy = verify::check_separated_count(2, 1.0, 1.0, 100, 2026);
  violations += greedy.violations;
  violations += verify::check_separated_count(1, 1.0, 2.0, 100, 2026).violations;
  violations += verify::check_separated_count(3, 1.0, 0.75, 100, 2026).violations;
  violations += verify::check_separated_count(4, 1.0, 0.8, 100, 2026).violations;
  const bool exact_nine = std::pow(2.0 * 1.0 / 1.0 + 1.0, 2) == 9.0;
  report("norm-perturbation-count-suites", violations == 0 && exact_nine,
         "violations=" + std::to_string(violations) +
             (exact_nine ? ", (2q/s+1)^p bound at p=2,q=1,s=1 is exactly 9"
                         : ", bound formula broken"));
}

void criterion_formula_equivalence() {
  double worst = 0.0;
  int points = 0;
  for (int n = 2; n <= 6; ++n) {
    for (const int k : {2, 3, 5, 7}) {
      for (const double r : {0.1, 0.5, 1.0, 3.0, 5.0}) {
        ++points;
        const double lib = log_packing_count(n, k, r);
        const double ref = testsupport::log_packing_reference(n, k, r);
        worst = std::max(worst, std::abs(lib - ref));
      }
    }
  }
  report("packing-formula-equivalence", worst <= 1e-12,
         std::to_string(points) + " grid points, max |diff|=" + fmt(worst));
}

void criterion_ball_volume() {
  double worst_closed = 0.0;
  for (const double r : {0.1, 1.0, 5.0}) {
    const double v2 = ball_volume(2, r);
    const double c2 = 2.0 * kPi * (std::cosh(r) - 1.0);
    worst_closed = std::max(worst_closed, std::abs(v2 - c2) / c2);
    const double v3 = ball_volume(3, r);
    const double c3 = kPi * (std::sinh(2.0 * r) - 2.0 * r);
    worst_closed = std::max(worst_closed, std::abs(v3 - c3) / c3);
  }

  double worst_oracle = 0.0;
  for (int n = 2; n <= 20; ++n) {
    for (const double r : {0.1, 0.5, 1.0, 3.0, 5.0, 10.0}) {
      const double quad = std::exp(log_ball_volume(n, r) - log_sphere_area(n));
      const double exact = testsupport::sinh_power_integral_expsum(n, r);
      worst_oracle = std::max(worst_oracle, std::abs(quad - exact) / exact);
    }
  }
  report("ball-volume-closed-forms", worst_closed <= 1e-10,
         "max rel err=" + fmt(worst_closed));
  report("ball-volume-vs-expsum", worst_oracle <= 1e-10,
         "114 points, max rel err=" + fmt(worst_oracle));
}

void criterion_optimizer() {
  double worst = 0.0;
  for (const int n : {2, 3, 4}) {
    for (const int k : {2, 3, 5}) {
      const BoundResult res = compute_bound({n, k});
      const auto scan =
          testsupport::dense_grid_objective_max(n, k, 100000, 1e-4, 60.0);
      worst = std::max(worst, std::abs(res.log_A - scan.best_value));
    }
  }
  report("optimizer-vs-dense-grid", worst <= 1e-6, "max |diff|=" + fmt(worst));

  bool monotone = true;
  for (int n = 2; n <= 8; ++n) {
    double prev = compute_bound({n, 2}).log_A;
    for (int k = 3; k <= 12; ++k) {
      const double cur = compute_bound({n, k}).log_A;
      if (cur > prev + 1e-9) monotone = false;
      prev = cur;
    }
  }
  report("bound-monotone-in-k", monotone,
         monotone ? "non-increasing for k=2..12 at n=2..8" : "monotonicity broken");
}

void criterion_cli(const std::string& cli, const std::string& source_dir) {
  bool pass = true;
  std::string detail;

  const auto bound = testsupport::run_process(cli + " bound --n 2 --k 2 --format json");
  const auto bound_again =
      testsupport::run_process(cli + " bound --n 2 --k 2 --format json");
  if (bound.exit_code != 0) {
    pass = false;
    detail += "bound exit != 0; ";
  }
  if (bound.output != bound_again.output || bound.output.empty()) {
    pass = false;
    detail += "bound rerun not byte-identical; ";
  }

  const std::string schema =
      read_file(source_dir + "/assets/orbivol-output.schema.v1.json");
  std::string error;
  if (!testsupport::schema_check(schema, bound.output, error)) {
    pass = false;
    detail += "bound schema: " + error + "; ";
  }

  const auto bad = testsupport::run_process(
      cli + " bound --n 2 --k 1 2>/dev/null");
  if (bad.exit_code != 2) {
    pass = false;
    detail += "usage error exit != 2; ";
  }

  const auto verify_run = testsupport::run_process(
      cli + " verify --trials 64 --seed 7 --format json");
  const auto verify_rerun = testsupport::run_process(
      cli + " verify --trials 64 --seed 7 --format json");
  if (verify_run.exit_code != 0) {
    pass = false;
    detail += "verify exit != 0; ";
  }
  if (verify_run.output != verify_rerun.output) {
    pass = false;
    detail += "verify rerun differs; ";
  }
  if (!testsupport::schema_check(schema, verify_run.output, error)) {
    pass = false;
    detail += "verify schema: " + error + "; ";
  }

  const auto table = testsupport::run_process(
      cli + " table --n-min 2 --n-max 4 --k-min 2 --k-max 4");
  const std::string golden = read_file(source_dir + "/tests/data/table_golden.txt");
  if (table.exit_code != 0 || golden.empty() || table.output != golden) {
    pass = false;
    detail += "table golden mismatch; ";
  }

  if (pass) detail = "exit codes, schema, reruns, golden table";
  report("cli-end-to-end", pass, detail);
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli_path;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--cli") cli_path = argv[i + 1];

  const auto start = std::chrono::steady_clock::now();

  criterion_tau();
  criterion_ck();
  criterion_boost_norm();
  criterion_elliptic_suite();
  criterion_equality_witness();
  criterion_entry_bound_suite();
  criterion_lemma_323334();
  criterion_formula_equivalence();
  criterion_ball_volume();
  criterion_optimizer();
  if (!cli_path.empty()) {
    criterion_cli(cli_path, ORBIVOL_SOURCE_DIR);
  } else {
    report("cli-end-to-end", false, "no --cli path given");
  }

  std::printf("%s: %d criteria failed (%.1fs total)\n",
              failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL", failures,
              seconds_since(start));
  return failures == 0 ? 0 : 1;
}
