#include "orbivol/cli.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "orbivol/bounds.hpp"
#include "orbivol/elliptic.hpp"
#include "orbivol/errors.hpp"
#include "orbivol/record.hpp"
#include "orbivol/verify.hpp"

namespace orbivol::cli {

namespace {

constexpr double kLn10 = 2.302585092994045684017991;

std::string kv_text(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t width = 0;
  for (const auto& [key, value] : rows) width = std::max(width, key.size());
  std::string out;
  for (const auto& [key, value] : rows) {
    out += key;
    out.append(width - key.size() + 2, ' ');
    out += value;
    out += '\n';
  }
  return out;
}

std::string table_text(const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) widths[c] = header[c].size();
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c)
      widths[c] = std::max(widths[c], row[c].size());
  std::string out;
  const auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out += row[c];
      if (c + 1 < row.size()) out.append(widths[c] - row[c].size() + 2, ' ');
    }
    out += '\n';
  };
  emit(header);
  for (const auto& row : rows) emit(row);
  return out;
}

std::string dump_record(const nlohmann::json& record) {
  return record.dump(2) + "\n";
}

struct CommandOutput {
  std::string payload;
  int exit_code = 0;
};

void require_n(int n) {
  if (n < 2) throw UsageError("n must be >= 2");
}
void require_k(int k) {
  if (k < 2) throw UsageError("k must be >= 2");
}

CommandOutput cmd_bound(int n, int k, Format format, const std::string& echo) {
  require_n(n);
  require_k(k);
  const BoundResult res = compute_bound({n, k});
  const double log10_a = res.log_A / kLn10;

  if (format == Format::csv) {
    std::string out =
        "n,k,log10_A,r_star,log_ball_volume,log_packing_count,optimizer_evals\n";
    out += std::to_string(n) + "," + std::to_string(k) + "," +
           fmt_sig(log10_a, 17) + "," + fmt_sig(res.r_star, 17) + "," +
           fmt_sig(res.log_ball_volume, 17) + "," +
           fmt_sig(res.log_packing_count, 17) + "," +
           std::to_string(res.optimizer_evals) + "\n";
    return {out, 0};
  }
  if (format == Format::json) {
    nlohmann::json record = make_record(echo);
    record["inputs"] = {{"n", n}, {"k", k}};
    record["results"] = {{"log_A", json_number(res.log_A)},
                         {"log10_A", json_number(log10_a)},
                         {"A_scientific", scientific_from_log(res.log_A)},
                         {"r_star", json_number(res.r_star)},
                         {"log_ball_volume", json_number(res.log_ball_volume)},
                         {"log_packing_count", json_number(res.log_packing_count)},
                         {"optimizer_evals", res.optimizer_evals}};
    return {dump_record(record), 0};
  }
  return {kv_text({{"n", std::to_string(n)},
                   {"k", std::to_string(k)},
                   {"log10_A", fmt_sig(log10_a)},
                   {"A", scientific_from_log(res.log_A)},
                   {"r_star", fmt_sig(res.r_star)},
                   {"log_ball_volume", fmt_sig(res.log_ball_volume)},
                   {"log_packing_count", fmt_sig(res.log_packing_count)},
                   {"optimizer_evals", std::to_string(res.optimizer_evals)}}),
          0};
}

CommandOutput cmd_table(int n_min, int n_max, int k_min, int k_max, Format format,
                        const std::string& echo) {
  require_n(n_min);
  require_k(k_min);
  if (n_max < n_min || k_max < k_min) throw UsageError("table ranges must be nonempty");
  const long cells = static_cast<long>(n_max - n_min + 1) * (k_max - k_min + 1);
  if (cells > 10000) throw UsageError("table size exceeds 10^4 cells");

  struct Row {
    int n, k;
    double log10_a, r_star;
  };
  std::vector<Row> rows;
  rows.reserve(static_cast<std::size_t>(cells));
  for (int n = n_min; n <= n_max; ++n)
    for (int k = k_min; k <= k_max; ++k) {
      const BoundResult res = compute_bound({n, k});
      rows.push_back({n, k, res.log_A / kLn10, res.r_star});
    }

  if (format == Format::csv) {
    std::string out = "n,k,log10_A,r_star\n";
    for (const auto& row : rows)
      out += std::to_string(row.n) + "," + std::to_string(row.k) + "," +
             fmt_sig(row.log10_a, 17) + "," + fmt_sig(row.r_star, 17) + "\n";
    return {out, 0};
  }
  if (format == Format::json) {
    nlohmann::json record = make_record(echo);
    record["inputs"] = {{"n_min", n_min},
                        {"n_max", n_max},
                        {"k_min", k_min},
                        {"k_max", k_max}};
    nlohmann::json cells_json = nlohmann::json::array();
    for (const auto& row : rows)
      cells_json.push_back({{"n", row.n},
                            {"k", row.k},
                            {"log10_A", json_number(row.log10_a)},
                            {"r_star", json_number(row.r_star)}});
    record["results"] = {{"rows", cells_json}};
    return {dump_record(record), 0};
  }
  std::vector<std::vector<std::string>> text_rows;
  for (const auto& row : rows)
    text_rows.push_back({std::to_string(row.n), std::to_string(row.k),
                         fmt_sig(row.log10_a), fmt_sig(row.r_star)});
  return {table_text({"n", "k", "log10_A", "r_star"}, text_rows), 0};
}

CommandOutput cmd_hurwitz(double volume, int n, int k, bool out_variant,
                          Format format, const std::string& echo) {
  require_n(n);
  require_k(k);
  if (!(volume > 0.0)) throw UsageError("volume must be > 0");
  const BoundResult res = compute_bound({n, k});
  const double factor = out_variant ? 2.0 : 1.0;
  const auto bound = hurwitz_from_log(volume, res.log_A, factor);
  const double log10_ratio =
      (std::log(factor) + std::log(volume) - res.log_A) / kLn10;
  const std::string note =
      bound ? std::string()
            : "group order bound exceeds 2^63; log10 of the ratio is " +
                  fmt_sig(log10_ratio, 6);

  if (format == Format::csv) {
    std::string out = "volume,n,k,variant,bound\n";
    out += fmt_sig(volume, 17) + "," + std::to_string(n) + "," +
           std::to_string(k) + "," + (out_variant ? "out" : "isometry") + "," +
           (bound ? std::to_string(*bound) : std::string(kExceedsSentinel)) + "\n";
    return {out, 0};
  }
  if (format == Format::json) {
    nlohmann::json record = make_record(echo);
    record["inputs"] = {{"volume", json_number(volume)},
                        {"n", n},
                        {"k", k},
                        {"variant", out_variant ? "out" : "isometry"}};
    record["results"] = {{"bound", bound ? nlohmann::json(*bound)
                                         : nlohmann::json(kExceedsSentinel)},
                         {"log10_ratio", json_number(log10_ratio)},
                         {"log10_A", json_number(res.log_A / kLn10)}};
    if (!note.empty()) record["results"]["note"] = note;
    return {dump_record(record), 0};
  }
  std::vector<std::pair<std::string, std::string>> rows = {
      {"volume", fmt_sig(volume)},
      {"n", std::to_string(n)},
      {"k", std::to_string(k)},
      {"variant", out_variant ? "out" : "isometry"},
      {"bound", bound ? std::to_string(*bound) : std::string(kExceedsSentinel)},
      {"log10_ratio", fmt_sig(log10_ratio)}};
  if (!note.empty()) rows.push_back({"note", note});
  return {kv_text(rows), 0};
}

CommandOutput cmd_constants(std::optional<int> k, std::optional<double> r,
                            Format format, const std::string& echo) {
  if (k && *k < 2) throw UsageError("k must be >= 2");
  if (r && !(*r > 0.0)) throw UsageError("r must be > 0");
  const double tau = jorgensen_tau();
  const double residual = std::abs(2.0 * tau * (1.0 + tau) * (1.0 + tau) - 1.0);

  std::vector<std::pair<std::string, std::string>> rows = {
      {"tau", fmt_sig(tau)},
      {"tau_residual", fmt_sig(residual, 3)},
      {"tau_gt_0.2971", tau > 0.2971 ? "yes" : "no"}};
  nlohmann::json results = {{"tau", json_number(tau)},
                            {"tau_residual", json_number(residual)},
                            {"tau_gt_0.2971", tau > 0.2971}};
  if (k) {
    rows.push_back({"c_" + std::to_string(*k), fmt_sig(c_k(*k))});
    results["k"] = *k;
    results["c_k"] = json_number(c_k(*k));
  }
  if (r) {
    rows.push_back({"kappa(" + fmt_sig(*r, 6) + ")", fmt_sig(std::exp(log_kappa(*r)))});
    rows.push_back({"log_kappa(" + fmt_sig(*r, 6) + ")", fmt_sig(log_kappa(*r))});
    results["r"] = json_number(*r);
    results["kappa"] = json_number(std::exp(log_kappa(*r)));
    results["log_kappa"] = json_number(log_kappa(*r));
  }

  if (format == Format::csv) {
    std::string out = "name,value\n";
    for (const auto& [key, value] : rows) out += key + "," + value + "\n";
    return {out, 0};
  }
  if (format == Format::json) {
    nlohmann::json record = make_record(echo);
    record["inputs"] = nlohmann::json::object();
    if (k) record["inputs"]["k"] = *k;
    if (r) record["inputs"]["r"] = json_number(*r);
    record["results"] = results;
    return {dump_record(record), 0};
  }
  return {kv_text(rows), 0};
}

CommandOutput cmd_ball_volume(int n, double r, Format format,
                              const std::string& echo) {
  require_n(n);
  if (!(r >= 0.0)) throw UsageError("r must be >= 0");
  const double log_volume = log_ball_volume(n, r);
  const double volume = r == 0.0 ? 0.0 : std::exp(log_volume);

  if (format == Format::csv) {
    std::string out = "n,r,volume,log_volume\n";
    out += std::to_string(n) + "," + fmt_sig(r, 17) + "," +
           (std::isfinite(volume) ? fmt_sig(volume, 17)
                                  : std::string(kUnderflowSentinel)) +
           "," +
           (std::isfinite(log_volume) ? fmt_sig(log_volume, 17)
                                      : std::string(kUnderflowSentinel)) +
           "\n";
    return {out, 0};
  }
  if (format == Format::json) {
    nlohmann::json record = make_record(echo);
    record["inputs"] = {{"n", n}, {"r", json_number(r)}};
    record["results"] = {{"volume", json_number(volume)},
                         {"log_volume", json_number(log_volume)}};
    return {dump_record(record), 0};
  }
  return {kv_text({{"n", std::to_string(n)},
                   {"r", fmt_sig(r)},
                   {"volume", std::isfinite(volume)
                                  ? fmt_sig(volume)
                                  : std::string(kUnderflowSentinel)},
                   {"log_volume", std::isfinite(log_volume)
                                      ? fmt_sig(log_volume)
                                      : std::string(kUnderflowSentinel)}}),
          0};
}

CommandOutput cmd_verify(long trials, std::uint64_t seed, Format format,
                         const std::string& echo) {
  if (trials < 0) throw UsageError("trials must be >= 0");
  const auto reports = verify::run_all({trials, seed});
  const long violations = verify::total_violations(reports);
  const int code = exit_code_for_reports(reports);

  if (format == Format::csv) {
    std::string out = "lemma,trials,violations,min_slack,worst_seed\n";
    for (const auto& report : reports) out += report_csv_row(report) + "\n";
    return {out, code};
  }
  if (format == Format::json) {
    nlohmann::json record = make_record(echo);
    record["inputs"] = {{"trials", trials}, {"seed", seed}};
    record["seed"] = seed;
    nlohmann::json suite = nlohmann::json::array();
    for (const auto& report : reports) suite.push_back(report_to_json(report));
    record["reports"] = suite;
    record["results"] = {{"suites", static_cast<long>(reports.size())},
                         {"violations", violations},
                         {"pass", violations == 0}};
    return {dump_record(record), code};
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& report : reports)
    rows.push_back({report.lemma_id, std::to_string(report.trials),
                    std::to_string(report.violations),
                    std::isfinite(report.min_slack)
                        ? fmt_sig(report.min_slack)
                        : std::string(kUnderflowSentinel),
                    std::to_string(report.worst_seed)});
  std::string out =
      table_text({"lemma", "trials", "violations", "min_slack", "worst_seed"}, rows);
  out += violations == 0 ? "PASS: no violations\n"
                         : "FAIL: " + std::to_string(violations) + " violations\n";
  return {out, code};
}

std::string command_echo(int argc, const char* const* argv) {
  std::string echo;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) echo += ' ';
    echo += argv[i];
  }
  return echo;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"explicit volume lower bounds for hyperbolic n-orbifolds with "
               "bounded torsion, and the randomized verification suite"};
  app.name("orbivol");
  app.require_subcommand(1);

  std::string format_name = "text";
  std::string output_path;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format_name, "output format")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    sub->add_option("--output", output_path,
                    "also write the output to this file, byte-identical");
  };

  int n = 2, k = 2;
  auto* bound = app.add_subcommand("bound", "compute the volume bound A(n,k)");
  bound->add_option("--n", n, "dimension (>= 2)")->required();
  bound->add_option("--k", k, "maximal torsion order (>= 2)")->required();
  add_common(bound);

  int n_min = 2, n_max = 4, k_min = 2, k_max = 4;
  auto* table = app.add_subcommand("table", "tabulate log10 A over a range");
  table->add_option("--n-min", n_min, "smallest dimension");
  table->add_option("--n-max", n_max, "largest dimension");
  table->add_option("--k-min", k_min, "smallest torsion order");
  table->add_option("--k-max", k_max, "largest torsion order");
  add_common(table);

  double volume = 1.0;
  bool out_variant = false;
  auto* hurwitz = app.add_subcommand(
      "hurwitz", "bound an isometry group order from a manifold volume");
  hurwitz->add_option("--volume", volume, "manifold volume (> 0)")->required();
  hurwitz->add_option("--n", n, "dimension (>= 2)")->required();
  hurwitz->add_option("--k", k, "maximal torsion order (>= 2)")->required();
  hurwitz->add_flag("--out", out_variant,
                    "bound a subgroup of Out(pi_1) instead (factor 2)");
  add_common(hurwitz);

  int const_k = 0;
  double const_r = 0.0;
  auto* constants = app.add_subcommand("constants", "print tau, c_k, kappa(r)");
  auto* const_k_opt = constants->add_option("--k", const_k, "also print c_k");
  auto* const_r_opt = constants->add_option("--r", const_r, "also print kappa(r)");
  add_common(constants);

  double radius = 1.0;
  auto* ball = app.add_subcommand("ball-volume", "hyperbolic ball volume");
  ball->add_option("--n", n, "dimension (>= 2)")->required();
  ball->add_option("--r", radius, "radius (>= 0)")->required();
  add_common(ball);

  long trials = 10000;
  std::uint64_t seed = 0;
  auto* verify_cmd = app.add_subcommand(
      "verify", "run every randomized inequality suite; exit 1 on violations");
  verify_cmd->add_option("--trials", trials, "trials per suite");
  verify_cmd->add_option("--seed", seed, "master seed");
  add_common(verify_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const auto format = parse_format(format_name);
  if (!format) {
    err << "error: unknown format\n";
    return 2;
  }
  const std::string echo = command_echo(argc, argv);

  try {
    CommandOutput result;
    if (app.got_subcommand(bound)) {
      result = cmd_bound(n, k, *format, echo);
    } else if (app.got_subcommand(table)) {
      result = cmd_table(n_min, n_max, k_min, k_max, *format, echo);
    } else if (app.got_subcommand(hurwitz)) {
      result = cmd_hurwitz(volume, n, k, out_variant, *format, echo);
    } else if (app.got_subcommand(constants)) {
      result = cmd_constants(
          const_k_opt->count() ? std::optional<int>(const_k) : std::nullopt,
          const_r_opt->count() ? std::optional<double>(const_r) : std::nullopt,
          *format, echo);
    } else if (app.got_subcommand(ball)) {
      result = cmd_ball_volume(n, radius, *format, echo);
    } else {
      result = cmd_verify(trials, seed, *format, echo);
    }

    out << result.payload;
    if (!output_path.empty()) {
      std::ofstream file(output_path, std::ios::binary);
      if (!file) throw UsageError("cannot open --output path: " + output_path);
      file << result.payload;
      if (!file.good()) throw UsageError("failed writing --output path");
    }
    return result.exit_code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace orbivol::cli
