#pragma once

// Reproduction driver for tables 1..7: refits the published means and checks
// the recovered R^2 against the published value, then (optionally) re-runs
// each sweep at its original n/grid/trials with counter metrics and checks
// the counter trend against the published qualitative finding.
//
// Key-mode policy per table, mirrored by the acceptance suite:
//   tables 1-5  integer keys: truncation creates the duplicate classes that
//               drive every published parameter trend;
//   tables 6-7  real keys: the published finding is flatness, which is the
//               monotone-transform-invariance regime of a comparison sort.
//               Under integer keys these two sweeps are NOT flat (the zero
//               bin spans (-1,1) after truncation, so small mu and small
//               sigma^2 both inflate duplicate mass); the README discusses
//               the conflict.
// Table 5's live trend is reported but never asserted: no key representation
// yields comparison counts that fall with lambda the way the published times
// do (real-mode counts are lambda-invariant, integer-mode counts rise).

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "newsort/fixtures.hpp"
#include "newsort/harness.hpp"
#include "newsort/regression.hpp"

namespace newsort {

struct ReproduceCheck {
  enum class Status { pass, fail, info };
  std::string label;
  std::string detail;
  Status status = Status::info;
};

struct TableReproduction {
  int table_id = 0;
  std::vector<ReproduceCheck> checks;
  std::optional<SweepTable> live_sweep;  // persisted by the CLI when present
};

/// Fixture-fit tolerance on |R^2 - published R^2|. Tables whose printed
/// means disagree with their own trial rows get the wider band.
inline double fixture_fit_tolerance(int table_id) {
  switch (table_id) {
    case 1: case 2: case 4: return 0.02;
    case 3: case 5: return 0.03;
    default: return 0.0;
  }
}

inline constexpr int kVerdictMaxDegree = 4;  // degrees tried for flat/dependent verdicts

/// The sweep that replays table `table_id` live, at the published n, grid
/// and trial count, under the key-mode policy above.
inline SweepConfig live_replica_config(int table_id, std::uint64_t master_seed) {
  const ReferenceTable& table = published_table(table_id);
  SweepConfig config;
  config.family = table.family;
  if (!table.fixed_param_name.empty()) {
    config.fixed_params[table.fixed_param_name] = table.fixed_param_value;
  }
  config.vary = table.param_name;
  config.grid = table.grid;
  config.n = table.n;
  config.trials = table.trials;
  config.master_seed = master_seed;
  config.key_mode = table.family == Family::normal ? KeyMode::real : KeyMode::integer;
  config.algorithm = Algorithm::new_sort;
  return config;
}

/// Real-keyed control for table 4: same shape and master seed, different
/// theta grid. Scaling by theta preserves key order, and trial seeds depend
/// on the grid index alone, so the comparison columns of any two such sweeps
/// must match exactly whatever thetas are asked for.
inline SweepConfig real_scale_control_config(std::uint64_t master_seed,
                                             const std::vector<double>& theta_grid) {
  SweepConfig config = live_replica_config(4, master_seed);
  config.key_mode = KeyMode::real;
  config.grid = theta_grid;
  return config;
}

// thresholds shared with the acceptance suite
inline constexpr double kTrendRhoBound = -0.9;    // strict decrease: spearman rho <= -0.9
inline constexpr double kTrendRatioBound = 4.0;   // first-row mean / last-row mean >= 4
inline constexpr double kGeometricRatioBound = 1.5;  // table 3: last >= 1.5 * first

namespace detail {

inline std::string fmt(double v, const char* spec = "%.4g") {
  char buf[48];
  std::snprintf(buf, sizeof(buf), spec, v);
  return std::string(buf);
}

inline ReproduceCheck fixture_fit_check(const ReferenceTable& table) {
  ReproduceCheck check;
  check.label = "Table " + std::to_string(table.id) + " fixture fit";
  if (table.published_fit_degree > 0) {
    const PolyFit fit = polyfit(table.grid, table.printed_means, table.published_fit_degree);
    const double tol = fixture_fit_tolerance(table.id);
    const bool ok = std::abs(fit.r_squared - table.published_r_squared) <= tol;
    check.detail = "degree " + std::to_string(fit.degree) + ", R^2=" + fmt(fit.r_squared) +
                   " (published " + fmt(table.published_r_squared) + ", tol " + fmt(tol) + ")";
    check.status = ok ? ReproduceCheck::Status::pass : ReproduceCheck::Status::fail;
  } else {
    // no polynomial was published: the finding is flatness of the means
    const auto verdict = dependence_verdict(table.grid, table.printed_means, kVerdictMaxDegree);
    const bool ok = !verdict.dependent;
    check.detail = std::string("verdict ") + verdict.name() + " (best degree " +
                   std::to_string(verdict.degree) + ", R^2=" + fmt(verdict.r_squared) +
                   ", published finding: no dependence)";
    check.status = ok ? ReproduceCheck::Status::pass : ReproduceCheck::Status::fail;
  }
  return check;
}

inline ReproduceCheck fixture_consistency_check(const ReferenceTable& table) {
  ReproduceCheck check;
  check.label = "Table " + std::to_string(table.id) + " fixture consistency";
  check.status = ReproduceCheck::Status::info;
  std::string flagged;
  int flagged_count = 0;
  for (const auto& row : fixture_consistency_report(table)) {
    if (!row.flagged) continue;
    ++flagged_count;
    if (!flagged.empty()) flagged += "; ";
    flagged += table.param_name + "=" + csv::format_param(row.grid_value) + " printed " +
               csv::format_double(row.printed_mean) + " vs recomputed " + fmt(row.recomputed_mean);
  }
  if (flagged_count == 0) {
    check.detail = "printed means match their trial rows within 0.01";
  } else {
    check.detail = std::to_string(flagged_count) + " printed mean(s) off by more than 0.01: " +
                   flagged + " (transcribed verbatim)";
  }
  return check;
}

inline std::string trend_word(double rho) {
  if (rho >= 0.5) return "increasing";
  if (rho <= -0.5) return "decreasing";
  return "no clear direction";
}

}  // namespace detail

/// Fixture-path checks for one table: refit of the published means plus the
/// consistency report. Pure arithmetic on embedded data; no simulation.
inline std::vector<ReproduceCheck> fixture_checks(int table_id) {
  const ReferenceTable& table = published_table(table_id);
  return {detail::fixture_fit_check(table), detail::fixture_consistency_check(table)};
}

/// Live-path check for one table: runs the replica sweep and evaluates the
/// counter trend. The sweep is returned so callers can persist it.
inline TableReproduction live_check(int table_id, std::uint64_t master_seed,
                                    std::size_t threads = 0) {
  TableReproduction result;
  result.table_id = table_id;
  SweepTable sweep = run_sweep(live_replica_config(table_id, master_seed), threads);
  const std::vector<double> grid = sweep.grid_values();
  const std::vector<double> means = sweep.mean_comparisons();
  const double rho = spearman_rho(grid, means);

  ReproduceCheck check;
  check.label = "Table " + std::to_string(table_id) + " live trend";
  switch (table_id) {
    case 1:
    case 4: {
      const double ratio = means.front() / means.back();
      const bool ok = rho <= kTrendRhoBound && ratio >= kTrendRatioBound;
      check.detail = "int keys: mean comparisons " + detail::trend_word(rho) + ", rho=" +
                     detail::fmt(rho, "%.3f") + ", first/last=" + detail::fmt(ratio, "%.2f") +
                     " (need rho <= -0.9 and ratio >= 4; published trend: decreasing)";
      check.status = ok ? ReproduceCheck::Status::pass : ReproduceCheck::Status::fail;
      break;
    }
    case 2: {
      const bool ok = rho <= kTrendRhoBound;
      check.detail = "int keys: mean comparisons " + detail::trend_word(rho) + ", rho=" +
                     detail::fmt(rho, "%.3f") + " (need rho <= -0.9; published trend: decreasing)";
      check.status = ok ? ReproduceCheck::Status::pass : ReproduceCheck::Status::fail;
      break;
    }
    case 3: {
      const double ratio = means.back() / means.front();
      const bool ok = ratio >= kGeometricRatioBound;
      check.detail = "int keys: mean comparisons at p=0.9 are " + detail::fmt(ratio, "%.2f") +
                     "x those at p=0.1 (need >= 1.5; published times rise toward p=0.9)";
      check.status = ok ? ReproduceCheck::Status::pass : ReproduceCheck::Status::fail;
      break;
    }
    case 5: {
      check.detail = "int keys: mean comparisons " + detail::trend_word(rho) + " in lambda (rho=" +
                     detail::fmt(rho, "%.3f") +
                     "); published times decrease - reported only, no key representation"
                     " reproduces that direction in comparison counts";
      check.status = ReproduceCheck::Status::info;
      break;
    }
    case 6:
    case 7: {
      const auto verdict = dependence_verdict(grid, means, kVerdictMaxDegree);
      const bool ok = !verdict.dependent;
      check.detail = std::string("real keys: verdict ") + verdict.name() + " (best degree " +
                     std::to_string(verdict.degree) + ", R^2=" + detail::fmt(verdict.r_squared) +
                     ", rho=" + detail::fmt(rho, "%.3f") + "; published finding: no dependence)";
      check.status = ok ? ReproduceCheck::Status::pass : ReproduceCheck::Status::fail;
      break;
    }
  }
  result.checks.push_back(std::move(check));

  if (table_id == 4) {
    // real-keyed scale control: two different theta grids, same master seed
    const SweepTable a = run_sweep(real_scale_control_config(master_seed, sweep.config.grid), threads);
    std::vector<double> alt_grid;
    for (std::size_t i = 0; i < sweep.config.grid.size(); ++i) {
      alt_grid.push_back(static_cast<double>(i + 1));
    }
    const SweepTable b = run_sweep(real_scale_control_config(master_seed, alt_grid), threads);
    bool identical = true;
    for (std::size_t g = 0; g < a.rows.size(); ++g) {
      for (std::size_t t = 0; t < a.rows[g].trials.size(); ++t) {
        identical = identical && a.rows[g].trials[t].stats.comparisons ==
                                     b.rows[g].trials[t].stats.comparisons;
      }
    }
    ReproduceCheck control;
    control.label = "Table 4 real-key control";
    control.detail = identical
                         ? "comparison counts are identical across theta grids (scale never "
                           "reaches the comparison counter with real keys)"
                         : "comparison counts differ across theta grids";
    control.status = identical ? ReproduceCheck::Status::pass : ReproduceCheck::Status::fail;
    result.checks.push_back(std::move(control));
  }

  result.live_sweep = std::move(sweep);
  return result;
}

inline const char* to_string(ReproduceCheck::Status status) {
  switch (status) {
    case ReproduceCheck::Status::pass: return "PASS";
    case ReproduceCheck::Status::fail: return "FAIL";
    case ReproduceCheck::Status::info: return "INFO";
  }
  return "?";
}

inline void render_checks(std::ostream& out, const std::vector<ReproduceCheck>& checks) {
  for (const auto& check : checks) {
    out << check.label << ": " << check.detail << "  " << to_string(check.status) << '\n';
  }
}

}  // namespace newsort
