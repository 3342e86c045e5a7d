// Command-line front end: single runs, parameter sweeps and the built-in
// airport experiments.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dtnsim/error.h"
#include "dtnsim/report.h"
#include "dtnsim/scenario.h"
#include "dtnsim/simulation.h"
#include "dtnsim/sweep.h"

namespace fs = std::filesystem;
using namespace dtnsim;

namespace {

struct Common {
  std::vector<std::string> sets;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string seeds;
  std::string router;
  unsigned jobs = 1;
};

std::vector<Override> overrides(const Common& c) {
  std::vector<Override> ov;
  for (const auto& s : c.sets) ov.push_back(parse_override(s));
  if (!c.router.empty()) ov.push_back({"Router.kind", c.router});
  if (c.seed) ov.push_back({"Scenario.seed", std::to_string(*c.seed)});
  return ov;
}

void write_text(const fs::path& path, const std::string& text) {
  if (!path.parent_path().empty()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) throw RuntimeError("cannot write " + path.string());
}

void print_progress(std::size_t done, std::size_t total, const SweepRun& run, const RunReport& r,
                    bool cached) {
  std::string cell;
  for (const auto& [k, v] : run.settings) cell += k + "=" + v + " ";
  std::fprintf(stderr, "[%zu/%zu] %sseed=%llu delivery_ratio=%s%s\n", done, total, cell.c_str(),
               static_cast<unsigned long long>(run.seed), format_number(r.delivery_ratio).c_str(),
               cached ? " (cached)" : "");
}

int cmd_run(const std::string& path, const Common& c, const std::string& format) {
  ScenarioConfig config = parse_scenario(read_text_file(path), overrides(c));
  config.base_dir = fs::path(path).parent_path();
  RunReport r = run_simulation(config);
  const fs::path out = c.out.empty() ? fs::path("out") : fs::path(c.out);
  write_text(out / "report.txt", to_text(r));
  write_text(out / "report.csv", csv_header() + "\n" + to_csv_row(r) + "\n");
  write_text(out / "report.json", to_json(r) + "\n");
  if (format == "csv") {
    std::cout << csv_header() << "\n" << to_csv_row(r) << "\n";
  } else if (format == "json") {
    std::cout << to_json(r) << "\n";
  } else {
    std::cout << to_text(r);
  }
  return 0;
}

int run_spec(SweepSpec& spec, const Common& c) {
  if (c.seed) {
    spec.seeds = {*c.seed};
  } else if (!c.seeds.empty()) {
    spec.seeds = parse_seed_list(c.seeds);
  }
  spec.out_dir = c.out.empty() ? fs::path("out") : fs::path(c.out);
  spec.jobs = c.jobs;
  for (const auto& s : c.sets) spec.overrides.push_back(parse_override(s));
  if (!c.router.empty()) spec.overrides.push_back({"Router.kind", c.router});
  SweepResult result = run_sweep(spec, print_progress);
  write_sweep_outputs(spec, result);
  std::fprintf(stderr, "wrote %s and %s\n", (spec.out_dir / (spec.name + ".csv")).string().c_str(),
               (spec.out_dir / (spec.name + "_summary.csv")).string().c_str());
  return 0;
}

int cmd_validate(const std::string& path, const Common& c) {
  ScenarioConfig config = parse_scenario(read_text_file(path), overrides(c));
  config.base_dir = fs::path(path).parent_path();
  // Building the run checks the map and the cluster placement as well.
  Simulation sim(config);
  std::cout << "ok: " << config.groups.size() << " groups, " << config.host_count()
            << " hosts, " << sim.tick_count() << " ticks, digest " << config_digest(config)
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delay-tolerant network simulator"};
  app.require_subcommand(1);

  Common common;
  std::string scenario;
  std::string format = "text";
  std::string preset;
  std::string name = "sweep";
  std::vector<std::string> axes;

  auto add_common = [&](CLI::App* sub, bool batch) {
    sub->add_option("--set", common.sets, "Override Section.key=value (repeatable)");
    sub->add_option("--seed", common.seed, "Scenario seed");
    sub->add_option("--router", common.router, "Router kind (epidemic, snw-vanilla, snw-binary, snf)");
    sub->add_option("-o,--out", common.out, "Output directory (default out)");
    if (batch) {
      sub->add_option("--seeds", common.seeds, "Seed list, e.g. 1,2,3 or 1..5");
      sub->add_option("--jobs", common.jobs, "Concurrent runs")->check(CLI::PositiveNumber);
    }
  };

  auto* run = app.add_subcommand("run", "Run one scenario and write out/report.{txt,csv,json}");
  run->add_option("scenario", scenario, "Scenario file")->required();
  run->add_option("--format", format, "Standard output format")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  add_common(run, false);

  auto* sweep = app.add_subcommand("sweep", "Run the cross product of axes over seeds");
  sweep->add_option("scenario", scenario, "Base scenario file")->required();
  sweep->add_option("--axis", axes, "Key=v1|v2|... (repeatable; key 'patrol' is a macro)");
  sweep->add_option("--name", name, "Output file stem");
  add_common(sweep, true);

  auto* pre = app.add_subcommand("preset", "Run a built-in airport experiment (sim1, sim2, sim3)");
  pre->add_option("name", preset, "Preset name")->required();
  add_common(pre, true);

  auto* validate = app.add_subcommand("validate", "Parse and check a scenario without running it");
  validate->add_option("scenario", scenario, "Scenario file")->required();
  validate->add_option("--set", common.sets, "Override Section.key=value (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*run) return cmd_run(scenario, common, format);
    if (*validate) return cmd_validate(scenario, common);
    if (*sweep) {
      SweepSpec spec;
      spec.name = name;
      spec.base_text = read_text_file(scenario);
      spec.base_dir = fs::path(scenario).parent_path();
      for (const auto& a : axes) spec.axes.push_back(parse_axis(a));
      return run_spec(spec, common);
    }
    if (*pre) {
      auto spec = preset_sweep(preset);
      if (!spec) {
        std::string list;
        for (const auto& n : preset_names()) list += (list.empty() ? "" : ", ") + n;
        std::cerr << "error: unknown preset '" << preset << "' (valid: " << list << ")\n";
        return 1;
      }
      return run_spec(*spec, common);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
