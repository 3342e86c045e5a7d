#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dtnsim/report.h"
#include "dtnsim/scenario.h"

namespace dtnsim {

/// One swept parameter. `key` is a scenario key (`Section.key`) or the
/// macro `patrol`, whose values are mapRandom and gate-clustered.
struct SweepAxis {
  std::string key;
  std::vector<std::string> values;
};

struct SweepSpec {
  std::string name = "sweep";
  std::string base_text;
  std::filesystem::path base_dir;
  std::vector<Override> overrides;
  std::vector<SweepAxis> axes;
  std::vector<std::uint64_t> seeds{1};
  /// Empty disables the per-run cache and file output.
  std::filesystem::path out_dir;
  unsigned jobs = 1;
};

/// `Key=v1|v2|...`
SweepAxis parse_axis(std::string_view text);

/// Comma-separated seeds, each either `n` or an inclusive range `a..b`.
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

/// Rewrites the destination groups' movement: `mapRandom` walks the whole
/// map, `gate-clustered` splits them evenly over the map gates.
void apply_patrol(ScenarioConfig& config, std::string_view mode, double cluster_range = 200.0);

struct SweepRun {
  std::size_t cell = 0;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> settings;
  ScenarioConfig config;
};

/// Cross product of the axes in declaration order (first axis slowest),
/// then seeds.
std::vector<SweepRun> expand_sweep(const SweepSpec& spec);

struct SweepResult {
  std::vector<SweepRun> runs;
  std::vector<RunReport> reports;  // parallel to runs
  std::size_t cached = 0;
};

using SweepProgress = std::function<void(std::size_t done, std::size_t total, const SweepRun&,
                                         const RunReport&, bool cached)>;

/// Runs every combination, reusing `out_dir/runs/<digest>.json` when present.
/// Output does not depend on `jobs`.
SweepResult run_sweep(const SweepSpec& spec, const SweepProgress& progress = {});

struct Stat {
  std::size_t n = 0;
  double mean = 0.0;
  /// Sample standard deviation; absent for fewer than two values.
  std::optional<double> stdev;
};

Stat describe(const std::vector<double>& values);

struct CellSummary {
  std::vector<std::pair<std::string, std::string>> settings;
  std::size_t runs = 0;
  Stat delivery_ratio;
  Stat latency_avg;
  Stat latency_median;
  Stat overhead_ratio;
  Stat hopcount_avg;
};

std::vector<CellSummary> summarize(const SweepResult& result);

std::string runs_csv(const SweepResult& result);
std::string summary_csv(const SweepSpec& spec, const std::vector<CellSummary>& cells);

/// Writes `<out>/<name>.csv` and `<out>/<name>_summary.csv`.
void write_sweep_outputs(const SweepSpec& spec, const SweepResult& result);

/// Built-in airport scenario text.
std::string_view airport_scenario_text();

std::vector<std::string> preset_names();

/// sim1, sim2 or sim3 over the airport scenario; nullopt for unknown names.
std::optional<SweepSpec> preset_sweep(std::string_view name);

}  // namespace dtnsim
