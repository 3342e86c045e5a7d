#pragma once

#include <string>
#include <vector>

#include "dtnsim/scenario.h"

namespace testing {

inline dtnsim::ScenarioConfig scenario(const std::string& text,
                                       std::vector<dtnsim::Override> ov = {}) {
  return dtnsim::parse_scenario(text, ov);
}

}  // namespace testing

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>

namespace testing {

/// Fresh directory under the system temp dir, removed by the destructor.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("dtnsim_test_" + std::to_string(rd()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

  std::filesystem::path write(const std::string& name, const std::string& text) const {
    auto p = path_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }

 private:
  std::filesystem::path path_;
};

/// Scenario text over a map file; `body` supplies everything but Map.file.
inline dtnsim::ScenarioConfig scenario_with_map(const TempDir& dir, const std::string& map_text,
                                                const std::string& body) {
  dir.write("map.txt", map_text);
  auto c = dtnsim::parse_scenario("Map.file = map.txt\n" + body);
  c.base_dir = dir.path();
  return c;
}

}  // namespace testing
