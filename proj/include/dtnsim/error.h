#pragma once

#include <stdexcept>
#include <string>

namespace dtnsim {

/// Invalid input: scenario syntax, unknown keys, constraint violations, bad
/// map files. The CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what
                                    : what),
        line_(line) {}

  /// 1-based source line, or 0 when the error is not tied to a line.
  int line() const { return line_; }

 private:
  int line_;
};

/// Failure while a run is executing (internal invariant breach, I/O while
/// writing results). The CLI maps this to exit code 2.
class RuntimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dtnsim
