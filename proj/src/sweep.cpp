#include "dtnsim/sweep.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <random>
#include <thread>

#include "dtnsim/error.h"
#include "dtnsim/simulation.h"

namespace dtnsim {

namespace {

std::uint64_t parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("bad seed '" + std::string(s) + "'");
  }
  return v;
}

std::string csv_value(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  // Unique per writer, so concurrent sweeps sharing a cache never collide.
  static std::atomic<unsigned> counter{0};
  auto tmp = path;
  tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) + "." +
         std::to_string(counter++) + "." + std::to_string(std::random_device{}());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw RuntimeError("cannot write " + tmp.string());
    out << text;
    if (!out) throw RuntimeError("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

SweepAxis parse_axis(std::string_view text) {
  auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError("axis '" + std::string(text) + "' is not Key=v1|v2");
  }
  SweepAxis axis;
  axis.key = std::string(text.substr(0, eq));
  std::string_view rest = text.substr(eq + 1);
  while (true) {
    auto bar = rest.find('|');
    std::string v(rest.substr(0, bar));
    if (v.empty()) throw ConfigError("axis '" + axis.key + "' has an empty value");
    axis.values.push_back(v);
    if (bar == std::string_view::npos) break;
    rest = rest.substr(bar + 1);
  }
  if (axis.key == "patrol") {
    for (const auto& v : axis.values) {
      if (v != "mapRandom" && v != "gate-clustered") {
        throw ConfigError("patrol must be mapRandom or gate-clustered, got '" + v + "'");
      }
    }
  }
  return axis;
}

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  std::vector<std::uint64_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    std::string_view item =
        text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (auto dots = item.find(".."); dots != std::string_view::npos) {
      std::uint64_t a = parse_u64(item.substr(0, dots));
      std::uint64_t b = parse_u64(item.substr(dots + 2));
      if (a > b) throw ConfigError("bad seed range '" + std::string(item) + "'");
      for (std::uint64_t s = a; s <= b; ++s) out.push_back(s);
    } else {
      out.push_back(parse_u64(item));
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

void apply_patrol(ScenarioConfig& config, std::string_view mode, double cluster_range) {
  std::vector<std::string> ids;
  if (config.events && !config.events->destinations.empty()) {
    ids = config.events->destinations;
  } else {
    for (const auto& g : config.groups) {
      if (g.destination_candidate) ids.push_back(g.id);
    }
  }
  for (auto& g : config.groups) {
    if (std::find(ids.begin(), ids.end(), g.id) == ids.end()) continue;
    g.clusters.clear();
    if (mode == "mapRandom") {
      g.movement = Movement::map_random;
    } else if (mode == "gate-clustered") {
      if (config.map.airport.gates.empty()) {
        throw ConfigError("gate-clustered patrol needs map gates");
      }
      g.movement = Movement::clustered;
      for (Vec2 gate : config.map.airport.gates) g.clusters.push_back({gate, cluster_range});
    } else {
      throw ConfigError("unknown patrol mode '" + std::string(mode) + "'");
    }
  }
}

std::vector<SweepRun> expand_sweep(const SweepSpec& spec) {
  std::vector<std::vector<std::pair<std::string, std::string>>> cells{{}};
  for (const auto& axis : spec.axes) {
    std::vector<std::vector<std::pair<std::string, std::string>>> next;
    for (const auto& cell : cells) {
      for (const auto& v : axis.values) {
        auto c = cell;
        c.emplace_back(axis.key, v);
        next.push_back(std::move(c));
      }
    }
    cells = std::move(next);
  }
  std::vector<SweepRun> runs;
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    for (std::uint64_t seed : spec.seeds) {
      std::vector<Override> ov = spec.overrides;
      std::optional<std::string> patrol;
      for (const auto& [k, v] : cells[ci]) {
        if (k == "patrol") {
          patrol = v;
        } else {
          ov.push_back({k, v});
        }
      }
      ov.push_back({"Scenario.seed", std::to_string(seed)});
      SweepRun run;
      run.cell = ci;
      run.seed = seed;
      run.settings = cells[ci];
      run.config = parse_scenario(spec.base_text, ov);
      run.config.base_dir = spec.base_dir;
      if (patrol) apply_patrol(run.config, *patrol);
      runs.push_back(std::move(run));
    }
  }
  return runs;
}

SweepResult run_sweep(const SweepSpec& spec, const SweepProgress& progress) {
  SweepResult result;
  result.runs = expand_sweep(spec);
  const std::size_t total = result.runs.size();
  result.reports.resize(total);
  std::vector<char> cached(total, 0);

  const bool use_cache = !spec.out_dir.empty();
  const std::filesystem::path cache_dir = spec.out_dir / "runs";
  std::vector<std::string> digests(total);
  for (std::size_t i = 0; i < total; ++i) {
    digests[i] = config_digest(result.runs[i].config);
    if (!use_cache) continue;
    auto path = cache_dir / (digests[i] + ".json");
    if (!std::filesystem::exists(path)) continue;
    try {
      RunReport r = report_from_json(read_text_file(path));
      if (r.config_digest == digests[i]) {
        result.reports[i] = std::move(r);
        cached[i] = 1;
      }
    } catch (const std::exception&) {
      // A truncated cache entry is simply recomputed.
    }
  }

  std::mutex mu;
  std::size_t done = 0;
  auto finish_one = [&](std::size_t i) {
    std::lock_guard lock(mu);
    ++done;
    if (progress) progress(done, total, result.runs[i], result.reports[i], cached[i] != 0);
  };
  for (std::size_t i = 0; i < total; ++i) {
    if (cached[i]) {
      ++result.cached;
      finish_one(i);
    }
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= total) return;
      if (cached[i]) continue;
      {
        std::lock_guard lock(mu);
        if (failure) return;
      }
      try {
        RunReport r = run_simulation(result.runs[i].config);
        if (use_cache) write_file(cache_dir / (digests[i] + ".json"), to_json(r));
        result.reports[i] = std::move(r);
        finish_one(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  const unsigned jobs = std::max(1u, spec.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return result;
}

Stat describe(const std::vector<double>& values) {
  Stat s;
  s.n = values.size();
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.n);
  if (s.n > 1) {
    double sq = 0.0;
    for (double v : values) sq += (v - s.mean) * (v - s.mean);
    s.stdev = std::sqrt(sq / static_cast<double>(s.n - 1));
  }
  return s;
}

std::vector<CellSummary> summarize(const SweepResult& result) {
  std::vector<CellSummary> cells;
  std::vector<std::vector<const RunReport*>> members;
  for (std::size_t i = 0; i < result.runs.size(); ++i) {
    const std::size_t c = result.runs[i].cell;
    if (c >= cells.size()) {
      cells.resize(c + 1);
      members.resize(c + 1);
    }
    cells[c].settings = result.runs[i].settings;
    members[c].push_back(&result.reports[i]);
  }
  for (std::size_t c = 0; c < cells.size(); ++c) {
    std::vector<double> dr, la, lm, ov, hc;
    for (const RunReport* r : members[c]) {
      dr.push_back(r->delivery_ratio);
      if (r->latency_avg) la.push_back(*r->latency_avg);
      if (r->latency_median) lm.push_back(*r->latency_median);
      if (r->overhead_ratio) ov.push_back(*r->overhead_ratio);
      if (r->hopcount_avg) hc.push_back(*r->hopcount_avg);
    }
    cells[c].runs = members[c].size();
    cells[c].delivery_ratio = describe(dr);
    cells[c].latency_avg = describe(la);
    cells[c].latency_median = describe(lm);
    cells[c].overhead_ratio = describe(ov);
    cells[c].hopcount_avg = describe(hc);
  }
  return cells;
}

std::string runs_csv(const SweepResult& result) {
  std::string s = csv_header() + "\n";
  for (const auto& r : result.reports) s += to_csv_row(r) + "\n";
  return s;
}

std::string summary_csv(const SweepSpec& spec, const std::vector<CellSummary>& cells) {
  std::string s;
  for (const auto& axis : spec.axes) s += axis.key + ",";
  s += "runs";
  for (const char* m : {"delivery_ratio", "latency_avg", "latency_median", "overhead_ratio",
                        "hopcount_avg"}) {
    s += std::string(",") + m + "_mean," + m + "_std";
  }
  s += "\n";
  for (const auto& c : cells) {
    for (const auto& [k, v] : c.settings) s += v + ",";
    s += std::to_string(c.runs);
    for (const Stat* st : {&c.delivery_ratio, &c.latency_avg, &c.latency_median,
                           &c.overhead_ratio, &c.hopcount_avg}) {
      s += "," + (st->n ? format_number(st->mean) : std::string()) + "," + csv_value(st->stdev);
    }
    s += "\n";
  }
  return s;
}

void write_sweep_outputs(const SweepSpec& spec, const SweepResult& result) {
  write_file(spec.out_dir / (spec.name + ".csv"), runs_csv(result));
  write_file(spec.out_dir / (spec.name + "_summary.csv"), summary_csv(spec, summarize(result)));
}

}  // namespace dtnsim
