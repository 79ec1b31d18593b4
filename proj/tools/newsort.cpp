// newsort - sorting laboratory command line.
//
// Subcommands: generate | sort | sweep | fit | reproduce | plot.
// Exit codes: 0 success, 1 completed with a negative verdict (a Flat fit or
// a failed reproduction check), 2 usage or input error.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "newsort/csv.hpp"
#include "newsort/fixtures.hpp"
#include "newsort/harness.hpp"
#include "newsort/provenance.hpp"
#include "newsort/regression.hpp"
#include "newsort/reproduce.hpp"
#include "newsort/rng.hpp"
#include "newsort/sort.hpp"
#include "newsort/svg.hpp"

namespace fs = std::filesystem;
using namespace newsort;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegativeVerdict = 1;
constexpr int kExitUsage = 2;

std::map<std::string, double> parse_params(const std::vector<std::string>& tokens) {
  std::map<std::string, double> params;
  for (const auto& token : tokens) {
    for (const auto& piece : csv::split_fields(token)) {  // allow comma-joined pairs
      if (piece.empty()) continue;
      const auto eq = piece.find('=');
      if (eq == std::string::npos) {
        throw std::invalid_argument("--params expects name=value, got '" + piece + "'");
      }
      params[piece.substr(0, eq)] = csv::parse_double(piece.substr(eq + 1), 0);
    }
  }
  return params;
}

void write_or_print(const std::optional<std::string>& path, const std::string& content) {
  if (path) {
    csv::write_text_file(*path, content);
  } else {
    std::cout << content;
  }
}

// ---------------------------------------------------------------------------

int cmd_generate(const std::string& dist, const std::vector<std::string>& param_tokens,
                 std::size_t n, std::uint64_t seed, const std::string& mode,
                 const std::optional<std::string>& out_path) {
  const auto spec = make_spec(family_from_string(dist), parse_params(param_tokens));
  const KeyArray keys = generate_keys(spec, n, seed, key_mode_from_string(mode));
  std::ostringstream out;
  csv::write_keys(out, keys);
  write_or_print(out_path, out.str());
  return kExitOk;
}

int cmd_sort(const std::string& in_path, const std::string& algorithm, const std::string& mode,
             std::optional<std::string> out_path, std::optional<std::string> stats_path) {
  std::ifstream in(in_path);
  if (!in) throw csv::ParseError("cannot open '" + in_path + "'");
  const KeyArray keys = csv::read_keys(in, key_mode_from_string(mode));

  const Algorithm algo = algorithm_from_string(algorithm);
  KeyArray sorted;
  SortStats stats;
  std::visit(
      [&](const auto& input) {
        auto outcome = algo == Algorithm::new_sort ? new_sort(input) : quicksort_baseline(input);
        if (!verify_sorted_permutation(input, outcome.output)) {
          throw std::logic_error("sort verification failed: output is not a sorted permutation");
        }
        stats = outcome.stats;
        sorted = std::move(outcome.output);
      },
      keys);

  const fs::path base(in_path);
  const fs::path stem = base.parent_path() / base.stem();
  if (!out_path) out_path = stem.string() + ".sorted.csv";
  if (!stats_path) stats_path = stem.string() + ".stats.csv";

  std::ostringstream sorted_text;
  csv::write_keys(sorted_text, sorted);
  csv::write_text_file(*out_path, sorted_text.str());

  std::ostringstream stats_text;
  stats_text << "comparisons,writes,max_depth,elapsed_ns\n"
             << stats.comparisons << ',' << stats.writes << ',' << stats.max_depth << ','
             << stats.elapsed_ns << '\n';
  csv::write_text_file(*stats_path, stats_text.str());

  std::cout << "sorted " << key_count(keys) << " keys with " << algorithm << ": comparisons "
            << stats.comparisons << ", writes " << stats.writes << ", max depth "
            << stats.max_depth << '\n'
            << "wrote " << *out_path << " and " << *stats_path << '\n';
  return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir, std::size_t threads) {
  std::ifstream in(config_path);
  if (!in) throw csv::ParseError("cannot open '" + config_path + "'");
  const SweepConfig config = parse_sweep_config(in);
  const SweepTable table = run_sweep(config, threads);

  fs::create_directories(out_dir);
  std::ostringstream trials, summary;
  write_trial_csv(trials, table);
  write_summary_csv(summary, table);
  csv::write_text_file((fs::path(out_dir) / "trials.csv").string(), trials.str());
  csv::write_text_file((fs::path(out_dir) / "summary.csv").string(), summary.str());

  std::ostringstream sidecar;
  sidecar << render_provenance(collect_provenance()) << "config: " << config_path << '\n'
          << "dist: " << to_string(config.family) << ", vary " << config.vary << ", n " << config.n
          << ", trials " << config.trials << ", seed " << config.master_seed << ", mode "
          << to_string(config.key_mode) << ", algorithm " << to_string(config.algorithm) << '\n';
  csv::write_text_file((fs::path(out_dir) / "provenance.txt").string(), sidecar.str());

  std::cout << "swept " << config.grid.size() << " grid values x " << config.trials
            << " trials; wrote " << out_dir << "/trials.csv, summary.csv, provenance.txt\n";
  return kExitOk;
}

std::string fit_report_text(const PolyFit& fit, const DependenceVerdict& verdict,
                            const std::string& ycol) {
  std::ostringstream out;
  out << "fit report\n"
      << "  metric: " << ycol << "\n"
      << "  points: " << fit.n_points << "\n"
      << "  degree: " << fit.degree << "\n"
      << "  coefficients (raw basis, ascending powers):\n";
  for (std::size_t i = 0; i < fit.coefficients.size(); ++i) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", fit.coefficients[i]);
    out << "    c" << i << " = " << buf << "\n";
  }
  char r2[64], adj[64], ssr[64], sst[64];
  std::snprintf(r2, sizeof(r2), "%.12g", fit.r_squared);
  std::snprintf(adj, sizeof(adj), "%.12g", fit.adjusted_r_squared());
  std::snprintf(ssr, sizeof(ssr), "%.12g", fit.ss_res);
  std::snprintf(sst, sizeof(sst), "%.12g", fit.ss_tot);
  out << "  r_squared: " << r2 << "\n"
      << "  adjusted_r_squared: " << adj << "\n"
      << "  ss_res: " << ssr << "\n"
      << "  ss_tot: " << sst << "\n"
      << "  verdict: " << verdict.name() << "\n";
  return out.str();
}

std::string fit_report_csv(const PolyFit& fit, const DependenceVerdict& verdict) {
  std::ostringstream out;
  out << "degree,r_squared,adjusted_r_squared,ss_res,ss_tot,verdict";
  for (std::size_t i = 0; i < fit.coefficients.size(); ++i) out << ",c" << i;
  out << '\n'
      << fit.degree << ',' << csv::format_double(fit.r_squared) << ','
      << csv::format_double(fit.adjusted_r_squared()) << ',' << csv::format_double(fit.ss_res)
      << ',' << csv::format_double(fit.ss_tot) << ',' << verdict.name();
  for (double c : fit.coefficients) out << ',' << csv::format_double(c);
  out << '\n';
  return out.str();
}

int cmd_fit(const std::string& in_path, const std::string& ycol, std::optional<int> degree,
            bool auto_degree, int max_degree, const std::optional<std::string>& report_path,
            const std::optional<std::string>& report_csv_path) {
  const csv::Table table = csv::read_table_file(in_path);
  const std::vector<double> xs = table.column("param");
  const std::vector<double> ys = table.column(ycol);

  PolyFit fit;
  DependenceVerdict verdict;
  try {
    if (auto_degree) {
      verdict = dependence_verdict(xs, ys, max_degree);
      if (verdict.degree == 0) throw FitError("zero variance: ys are constant");
      fit = select_degree(xs, ys, max_degree).second;
    } else {
      fit = polyfit(xs, ys, *degree);
      verdict = {fit.r_squared >= kDependenceThreshold, fit.degree, fit.r_squared};
    }
  } catch (const FitError& e) {
    const std::string msg(e.what());
    if (msg.rfind("zero variance", 0) != 0) throw;
    // constant ys: a verdict-level case, not a fit
    std::ostringstream out;
    out << "fit report\n  metric: " << ycol << "\n  points: " << xs.size()
        << "\n  degree: none (" << msg << ")\n  verdict: Flat\n";
    write_or_print(report_path, out.str());
    if (report_csv_path) {
      csv::write_text_file(*report_csv_path,
                           "degree,r_squared,adjusted_r_squared,ss_res,ss_tot,verdict\n"
                           "0,0,0,0,0,Flat\n");
    }
    return kExitNegativeVerdict;
  }

  write_or_print(report_path, fit_report_text(fit, verdict, ycol));
  if (report_csv_path) csv::write_text_file(*report_csv_path, fit_report_csv(fit, verdict));
  return verdict.dependent ? kExitOk : kExitNegativeVerdict;
}

int cmd_reproduce(const std::string& table_arg, std::uint64_t master_seed,
                  const std::string& out_dir, bool fixture_only, std::size_t threads) {
  std::vector<int> ids;
  if (table_arg == "all") {
    ids = {1, 2, 3, 4, 5, 6, 7};
  } else {
    const auto id = static_cast<int>(csv::parse_int(table_arg, 0));
    if (id < 1 || id > 7) throw std::invalid_argument("--table expects 1..7 or all");
    ids = {id};
  }

  std::ostringstream report;
  report << "reproduction report (tables: " << table_arg << ", master seed " << master_seed
         << (fixture_only ? ", fixture-only" : "") << ")\n"
         << render_provenance(collect_provenance()) << '\n';

  bool any_fail = false;
  for (int id : ids) {
    auto checks = fixture_checks(id);
    if (!fixture_only) {
      auto live = live_check(id, master_seed, threads);
      checks.insert(checks.end(), live.checks.begin(), live.checks.end());
      if (!out_dir.empty() && live.live_sweep) {
        const fs::path dir = fs::path(out_dir) / ("table" + std::to_string(id));
        fs::create_directories(dir);
        std::ostringstream trials, summary;
        write_trial_csv(trials, *live.live_sweep);
        write_summary_csv(summary, *live.live_sweep);
        csv::write_text_file((dir / "trials.csv").string(), trials.str());
        csv::write_text_file((dir / "summary.csv").string(), summary.str());
      }
    }
    for (const auto& check : checks) any_fail = any_fail || check.status == ReproduceCheck::Status::fail;
    render_checks(report, checks);
  }

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    const fs::path fixture_dir = fs::path(out_dir) / "fixtures";
    fs::create_directories(fixture_dir);
    for (int id : ids) {
      std::ostringstream fixture;
      write_fixture_csv(fixture, published_table(id));
      csv::write_text_file((fixture_dir / ("table" + std::to_string(id) + ".csv")).string(),
                           fixture.str());
    }
    csv::write_text_file((fs::path(out_dir) / "reproduce_report.txt").string(), report.str());
  }

  std::cout << report.str();
  return any_fail ? kExitNegativeVerdict : kExitOk;
}

int cmd_plot(const std::string& in_path, const std::optional<std::string>& fit_path,
             const std::string& ycol, const std::string& out_path) {
  const csv::Table table = csv::read_table_file(in_path);
  if (table.rows.empty()) throw csv::ParseError("'" + in_path + "' has no data rows to plot");

  PlotInput plot;
  plot.xs = table.column("param");
  plot.ys = table.column(ycol);
  plot.x_label = "param";
  plot.y_label = ycol;

  if (fit_path) {
    const csv::Table fit_table = csv::read_table_file(*fit_path, /*strict=*/false);
    if (fit_table.rows.empty()) throw csv::ParseError("'" + *fit_path + "' has no fit row");
    std::vector<double> coeffs;
    for (std::size_t i = 0; i < fit_table.columns.size(); ++i) {
      if (fit_table.columns[i].size() > 1 && fit_table.columns[i][0] == 'c') {
        coeffs.push_back(fit_table.rows[0][i]);
      }
    }
    if (coeffs.empty()) throw csv::ParseError("'" + *fit_path + "' carries no coefficients");
    double lo = plot.xs[0], hi = plot.xs[0];
    for (double x : plot.xs) { lo = std::min(lo, x); hi = std::max(hi, x); }
    constexpr int kSamples = 200;
    for (int i = 0; i < kSamples; ++i) {
      const double x = lo + (hi - lo) * static_cast<double>(i) / (kSamples - 1);
      plot.curve_xs.push_back(x);
      plot.curve_ys.push_back(predict(std::span<const double>(coeffs), x));
    }
  }

  csv::write_text_file(out_path, render_scatter_svg(plot));
  std::cout << "wrote " << out_path << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"newsort: interchange-free quicksort laboratory"};
  app.require_subcommand(1);

  // CSV-reading subcommands share the fit-table parse errors; a CLI11 parse
  // error maps to the same usage exit code.

  // generate
  std::string g_dist, g_mode = "int";
  std::vector<std::string> g_params;
  std::size_t g_n = 0;
  std::uint64_t g_seed = kDefaultMasterSeed;
  std::optional<std::string> g_out;
  auto* generate = app.add_subcommand("generate", "draw keys from a distribution into a CSV");
  generate->add_option("--dist", g_dist, "distribution family")->required();
  generate->add_option("--params", g_params, "parameters as name=value");
  generate->add_option("--n", g_n, "number of keys")->required();
  generate->add_option("--seed", g_seed, "generator seed");
  generate->add_option("--mode", g_mode, "key mode: int|real");
  generate->add_option("--out", g_out, "output CSV (default stdout)");

  // sort
  std::string s_in, s_algorithm = "new_sort", s_mode = "int";
  std::optional<std::string> s_out, s_stats;
  auto* sort_cmd = app.add_subcommand("sort", "sort a key CSV and record exact counters");
  sort_cmd->add_option("--in", s_in, "input key CSV")->required();
  sort_cmd->add_option("--algorithm", s_algorithm, "new_sort|quicksort_baseline");
  sort_cmd->add_option("--mode", s_mode, "key mode: int|real");
  sort_cmd->add_option("--out", s_out, "sorted CSV (default <in>.sorted.csv)");
  sort_cmd->add_option("--stats-out", s_stats, "stats CSV (default <in>.stats.csv)");

  // sweep
  std::string w_config, w_out_dir = ".";
  std::size_t w_threads = 0;
  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep from a config file");
  sweep->add_option("--config", w_config, "flat key=value config file")->required();
  sweep->add_option("--out-dir", w_out_dir, "output directory");
  sweep->add_option("--threads", w_threads, "trial parallelism (default: NEWSORT_THREADS or hardware)");

  // fit
  std::string f_in, f_ycol = "mean_comparisons";
  std::optional<int> f_degree;
  bool f_auto = false;
  int f_max_degree = 4;
  std::optional<std::string> f_report, f_report_csv;
  auto* fit = app.add_subcommand("fit", "fit a polynomial to a sweep summary");
  fit->add_option("--in", f_in, "summary CSV")->required();
  fit->add_option("--ycol", f_ycol, "metric column to fit");
  auto* degree_opt = fit->add_option("--degree", f_degree, "polynomial degree 1..6");
  auto* auto_opt = fit->add_flag("--auto", f_auto, "select the degree by adjusted R^2");
  fit->add_option("--max-degree", f_max_degree, "degree ceiling for --auto");
  fit->add_option("--report", f_report, "plain-text report path (default stdout)");
  fit->add_option("--report-csv", f_report_csv, "machine-readable report path");
  degree_opt->excludes(auto_opt);

  // reproduce
  std::string r_table = "all", r_out_dir;
  std::uint64_t r_seed = kDefaultMasterSeed;
  bool r_fixture_only = false;
  std::size_t r_threads = 0;
  auto* reproduce = app.add_subcommand("reproduce", "reproduce the published tables 1..7");
  reproduce->add_option("--table", r_table, "table id 1..7 or all");
  reproduce->add_option("--seed", r_seed, "master seed for the live replicas");
  reproduce->add_option("--out-dir", r_out_dir, "persist fixtures, sweeps and the report here");
  reproduce->add_flag("--fixture-only", r_fixture_only, "skip the live sweeps");
  reproduce->add_option("--threads", r_threads, "trial parallelism");

  // plot
  std::string p_in, p_ycol = "mean_comparisons", p_out;
  std::optional<std::string> p_fit;
  auto* plot = app.add_subcommand("plot", "render a sweep summary as an SVG scatter plot");
  plot->add_option("--in", p_in, "summary CSV")->required();
  plot->add_option("--fit", p_fit, "fit-report CSV to overlay as a curve");
  plot->add_option("--ycol", p_ycol, "metric column to plot");
  plot->add_option("--out", p_out, "output SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (generate->parsed()) return cmd_generate(g_dist, g_params, g_n, g_seed, g_mode, g_out);
    if (sort_cmd->parsed()) return cmd_sort(s_in, s_algorithm, s_mode, s_out, s_stats);
    if (sweep->parsed()) return cmd_sweep(w_config, w_out_dir, w_threads);
    if (fit->parsed()) {
      if (!f_auto && !f_degree) {
        std::cerr << "fit: give --degree or --auto\n";
        return kExitUsage;
      }
      return cmd_fit(f_in, f_ycol, f_degree, f_auto, f_max_degree, f_report, f_report_csv);
    }
    if (reproduce->parsed())
      return cmd_reproduce(r_table, r_seed, r_out_dir, r_fixture_only, r_threads);
    if (plot->parsed()) return cmd_plot(p_in, p_fit, p_ycol, p_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}
