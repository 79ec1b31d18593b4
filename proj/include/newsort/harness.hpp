#pragma once

// Parameter-sweep harness: runs repeated generate-and-sort trials over a
// grid of distribution parameters at fixed n, aggregates the counters, and
// persists trial/summary CSVs. Counter columns are a pure function of the
// config; wall time is recorded but quarantined from every determinism
// guarantee and from all golden files.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "newsort/csv.hpp"
#include "newsort/keys.hpp"
#include "newsort/rng.hpp"
#include "newsort/sort.hpp"

namespace newsort {

inline constexpr std::uint64_t kDefaultMasterSeed = 20071803ULL;

enum class Algorithm { new_sort, quicksort_baseline };

inline const char* to_string(Algorithm algorithm) {
  return algorithm == Algorithm::new_sort ? "new_sort" : "quicksort_baseline";
}

inline Algorithm algorithm_from_string(const std::string& name) {
  if (name == "new_sort") return Algorithm::new_sort;
  if (name == "quicksort_baseline") return Algorithm::quicksort_baseline;
  throw std::invalid_argument("unknown algorithm '" + name +
                              "' (expected new_sort or quicksort_baseline)");
}

/// Builds a DistributionSpec from named parameters. `sigma2` is accepted as
/// the normal's variance and converted to sigma.
inline DistributionSpec make_spec(Family family, const std::map<std::string, double>& params) {
  auto take = [&params, family](const std::string& name) {
    const auto it = params.find(name);
    if (it == params.end()) {
      throw std::invalid_argument(std::string(to_string(family)) + ": missing parameter '" + name +
                                  "'");
    }
    return it->second;
  };
  auto expect_only = [&params, family](std::initializer_list<const char*> allowed) {
    for (const auto& [name, value] : params) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || name == a;
      if (!ok) {
        throw std::invalid_argument(std::string(to_string(family)) + ": unknown parameter '" +
                                    name + "'");
      }
    }
  };
  switch (family) {
    case Family::discrete_uniform: {
      expect_only({"k"});
      const double k = take("k");
      if (std::floor(k) != k) throw std::invalid_argument("discrete_uniform: k must be an integer");
      return DistributionSpec::discrete_uniform(static_cast<std::int64_t>(k));
    }
    case Family::poisson:
      expect_only({"lambda"});
      return DistributionSpec::poisson(take("lambda"));
    case Family::geometric:
      expect_only({"p"});
      return DistributionSpec::geometric(take("p"));
    case Family::continuous_uniform:
      expect_only({"theta"});
      return DistributionSpec::continuous_uniform(take("theta"));
    case Family::exponential:
      expect_only({"lambda"});
      return DistributionSpec::exponential(take("lambda"));
    case Family::normal: {
      expect_only({"mu", "sigma", "sigma2"});
      const double mu = take("mu");
      if (params.count("sigma") && params.count("sigma2")) {
        throw std::invalid_argument("normal: give sigma or sigma2, not both");
      }
      if (params.count("sigma2")) {
        const double s2 = params.at("sigma2");
        if (!(s2 > 0.0)) throw std::invalid_argument("normal: sigma2 must be > 0");
        return DistributionSpec::normal(mu, std::sqrt(s2));
      }
      return DistributionSpec::normal(mu, take("sigma"));
    }
  }
  throw std::invalid_argument("unknown family");
}

struct SweepConfig {
  Family family = Family::discrete_uniform;
  std::map<std::string, double> fixed_params;  // never varied, e.g. {"sigma2", 100}
  std::string vary;                            // name of the swept parameter
  std::vector<double> grid;                    // strictly monotone, non-empty
  std::size_t n = 0;
  std::size_t trials = 10;
  std::uint64_t master_seed = kDefaultMasterSeed;
  KeyMode key_mode = KeyMode::integer;
  Algorithm algorithm = Algorithm::new_sort;

  DistributionSpec spec_at(double grid_value) const {
    auto params = fixed_params;
    params[vary] = grid_value;
    return make_spec(family, params);
  }

  void validate() const {
    if (grid.empty()) throw std::invalid_argument("sweep grid is empty");
    if (grid.size() >= 2) {
      const bool increasing = grid[0] < grid[1];
      for (std::size_t i = 1; i < grid.size(); ++i) {
        if (increasing ? grid[i - 1] >= grid[i] : grid[i - 1] <= grid[i]) {
          throw std::invalid_argument("sweep grid must be strictly monotone");
        }
      }
    }
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    for (double g : grid) spec_at(g);  // parameter domains, including the varying one
  }
};

struct TrialRecord {
  double grid_value = 0.0;
  std::size_t trial_index = 0;
  SortStats stats;
};

struct MetricSummary {
  double mean = 0.0;
  double sd = 0.0;  // sample SD (n-1); 0 for a single trial
};

struct RowSummary {
  MetricSummary comparisons;
  MetricSummary writes;
  MetricSummary max_depth;
  MetricSummary elapsed_s;
};

struct SweepRow {
  double grid_value = 0.0;
  std::vector<TrialRecord> trials;
  RowSummary summary;
};

struct SweepTable {
  SweepConfig config;
  std::vector<SweepRow> rows;

  std::vector<double> grid_values() const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(row.grid_value);
    return out;
  }

  std::vector<double> mean_comparisons() const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(row.summary.comparisons.mean);
    return out;
  }
};

inline MetricSummary summarize_values(const std::vector<double>& values) {
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / n;
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0))};
}

inline RowSummary summarize_row(const std::vector<TrialRecord>& trials) {
  std::vector<double> cmps, writes, depth, secs;
  for (const auto& t : trials) {
    cmps.push_back(static_cast<double>(t.stats.comparisons));
    writes.push_back(static_cast<double>(t.stats.writes));
    depth.push_back(static_cast<double>(t.stats.max_depth));
    secs.push_back(static_cast<double>(t.stats.elapsed_ns) * 1e-9);
  }
  return {summarize_values(cmps), summarize_values(writes), summarize_values(depth),
          summarize_values(secs)};
}

/// Per-trial seed: feed the master seed into the generator, advance
/// grid_index*65537 + trial_index + 1 steps, and take the last output. Every
/// table cell is independently re-runnable from (master, grid, trial).
inline std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::size_t grid_index,
                                       std::size_t trial_index) {
  SplitMix64 rng(master_seed);
  const std::uint64_t steps =
      static_cast<std::uint64_t>(grid_index) * 65537ULL + static_cast<std::uint64_t>(trial_index) + 1ULL;
  std::uint64_t out = 0;
  for (std::uint64_t i = 0; i < steps; ++i) out = rng.next();
  return out;
}

/// One generate-and-sort execution. The timed region inside the sort covers
/// the sort alone, never variate generation, and the output is verified as a
/// sorted permutation before the stats are accepted: a verification failure
/// is an implementation bug, not a data error.
inline SortStats run_trial(const DistributionSpec& spec, std::size_t n, std::uint64_t seed,
                           KeyMode mode, Algorithm algorithm) {
  const KeyArray keys = generate_keys(spec, n, seed, mode);
  return std::visit(
      [&](const auto& input) {
        auto outcome =
            algorithm == Algorithm::new_sort ? new_sort(input) : quicksort_baseline(input);
        if (!verify_sorted_permutation(input, outcome.output)) {
          throw std::logic_error("sort verification failed: output is not a sorted permutation");
        }
        return outcome.stats;
      },
      keys);
}

/// Thread budget: explicit request, else NEWSORT_THREADS, else the hardware.
inline std::size_t resolve_thread_count(std::size_t requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("NEWSORT_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Runs every grid value x trial with its derived seed. Trials execute in
/// parallel up to the thread budget; each owns its seed and stats, and rows
/// are assembled in grid order afterwards, so the counter columns never
/// depend on the schedule.
inline SweepTable run_sweep(const SweepConfig& config, std::size_t threads = 0) {
  config.validate();
  SweepTable table;
  table.config = config;

  const std::size_t total = config.grid.size() * config.trials;
  std::vector<TrialRecord> records(total);
  std::atomic<std::size_t> cursor{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    while (true) {
      const std::size_t task = cursor.fetch_add(1);
      if (task >= total) return;
      const std::size_t grid_index = task / config.trials;
      const std::size_t trial_index = task % config.trials;
      try {
        const double grid_value = config.grid[grid_index];
        const auto spec = config.spec_at(grid_value);
        const auto seed = derive_trial_seed(config.master_seed, grid_index, trial_index);
        records[task] = {grid_value, trial_index,
                         run_trial(spec, config.n, seed, config.key_mode, config.algorithm)};
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        cursor.store(total);
        return;
      }
    }
  };

  const std::size_t pool = std::min(resolve_thread_count(threads), total == 0 ? 1 : total);
  if (pool <= 1) {
    worker();
  } else {
    std::vector<std::thread> workers;
    workers.reserve(pool);
    for (std::size_t i = 0; i < pool; ++i) workers.emplace_back(worker);
    for (auto& w : workers) w.join();
  }
  if (failure) std::rethrow_exception(failure);

  table.rows.reserve(config.grid.size());
  for (std::size_t g = 0; g < config.grid.size(); ++g) {
    SweepRow row;
    row.grid_value = config.grid[g];
    row.trials.assign(records.begin() + static_cast<std::ptrdiff_t>(g * config.trials),
                      records.begin() + static_cast<std::ptrdiff_t>((g + 1) * config.trials));
    row.summary = summarize_row(row.trials);
    table.rows.push_back(std::move(row));
  }
  return table;
}

// ---------------------------------------------------------------------------
// persistence

/// Trial CSV: `param,trial,comparisons,writes,max_depth,elapsed_ns`.
inline void write_trial_csv(std::ostream& out, const SweepTable& table) {
  out << "param,trial,comparisons,writes,max_depth,elapsed_ns\n";
  for (const auto& row : table.rows) {
    for (const auto& trial : row.trials) {
      out << csv::format_param(row.grid_value) << ',' << trial.trial_index << ','
          << trial.stats.comparisons << ',' << trial.stats.writes << ',' << trial.stats.max_depth
          << ',' << trial.stats.elapsed_ns << '\n';
    }
  }
}

/// Summary CSV: `param,mean_comparisons,sd_comparisons,mean_elapsed_s,sd_elapsed_s`.
inline void write_summary_csv(std::ostream& out, const SweepTable& table) {
  out << "param,mean_comparisons,sd_comparisons,mean_elapsed_s,sd_elapsed_s\n";
  for (const auto& row : table.rows) {
    out << csv::format_param(row.grid_value) << ',' << csv::format_double(row.summary.comparisons.mean)
        << ',' << csv::format_double(row.summary.comparisons.sd) << ','
        << csv::format_double(row.summary.elapsed_s.mean) << ','
        << csv::format_double(row.summary.elapsed_s.sd) << '\n';
  }
}

// ---------------------------------------------------------------------------
// sweep config files: flat key=value lines

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return s.substr(b, e - b);
}

}  // namespace detail

/// Grid syntax: either a comma list (`1,2.5,7`) or `start:stop:step` with the
/// stop included when it lands on the lattice within 1e-9.
inline std::vector<double> parse_grid(const std::string& text, std::size_t line_no = 0) {
  const auto fail = [line_no](const std::string& why) -> std::vector<double> {
    const std::string at = line_no ? "line " + std::to_string(line_no) + ": " : "";
    throw csv::ParseError(at + why);
  };
  if (text.find(':') != std::string::npos) {
    const auto first = text.find(':');
    const auto second = text.find(':', first + 1);
    if (second == std::string::npos || text.find(':', second + 1) != std::string::npos) {
      return fail("grid range must be start:stop:step");
    }
    const double start = csv::parse_double(detail::trim(text.substr(0, first)), line_no);
    const double stop = csv::parse_double(detail::trim(text.substr(first + 1, second - first - 1)), line_no);
    const double step = csv::parse_double(detail::trim(text.substr(second + 1)), line_no);
    if (step == 0.0) return fail("grid step must be nonzero");
    if ((stop - start) / step < 0.0) return fail("grid step runs away from stop");
    const double span = (stop - start) / step;
    const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    std::vector<double> grid;
    grid.reserve(count);
    for (std::size_t i = 0; i < count; ++i) grid.push_back(start + static_cast<double>(i) * step);
    return grid;
  }
  std::vector<double> grid;
  for (const auto& field : csv::split_fields(text)) {
    grid.push_back(csv::parse_double(detail::trim(field), line_no));
  }
  return grid;
}

/// Flat `key=value` config, one setting per line; `#` comments and blank
/// lines are ignored. Keys: dist, vary, grid, n, trials, seed, mode,
/// algorithm, and fixed.<param> for non-varying parameters.
inline SweepConfig parse_sweep_config(std::istream& in) {
  SweepConfig config;
  bool have_dist = false, have_vary = false, have_grid = false, have_n = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = detail::trim(line);
    if (text.empty() || text[0] == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw csv::ParseError("line " + std::to_string(line_no) + ": expected key=value, got '" +
                            text + "'");
    }
    const std::string key = detail::trim(text.substr(0, eq));
    const std::string value = detail::trim(text.substr(eq + 1));
    try {
      if (key == "dist") {
        config.family = family_from_string(value);
        have_dist = true;
      } else if (key == "vary") {
        config.vary = value;
        have_vary = true;
      } else if (key == "grid") {
        config.grid = parse_grid(value, line_no);
        have_grid = true;
      } else if (key == "n") {
        const auto v = csv::parse_int(value, line_no);
        if (v < 0) throw std::invalid_argument("n must be >= 0");
        config.n = static_cast<std::size_t>(v);
        have_n = true;
      } else if (key == "trials") {
        const auto v = csv::parse_int(value, line_no);
        if (v < 1) throw std::invalid_argument("trials must be >= 1");
        config.trials = static_cast<std::size_t>(v);
      } else if (key == "seed") {
        config.master_seed = static_cast<std::uint64_t>(csv::parse_int(value, line_no));
      } else if (key == "mode") {
        config.key_mode = key_mode_from_string(value);
      } else if (key == "algorithm") {
        config.algorithm = algorithm_from_string(value);
      } else if (key.rfind("fixed.", 0) == 0) {
        config.fixed_params[key.substr(6)] = csv::parse_double(value, line_no);
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const csv::ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw csv::ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_dist) throw csv::ParseError("config is missing dist=");
  if (!have_vary) throw csv::ParseError("config is missing vary=");
  if (!have_grid) throw csv::ParseError("config is missing grid=");
  if (!have_n) throw csv::ParseError("config is missing n=");
  try {
    config.validate();
  } catch (const std::exception& e) {
    throw csv::ParseError(std::string("invalid config: ") + e.what());
  }
  return config;
}

inline SweepConfig parse_sweep_config(const std::string& text) {
  std::istringstream in(text);
  return parse_sweep_config(in);
}

}  // namespace newsort
