#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zk {

/// Malformed or inconsistent run configuration. Carries the 1-based line
/// number of the offending entry when it came from a file (0 otherwise).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Raised by the stepper when a coefficient leaves the finite range or
/// exceeds the blow-up threshold.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(double time, double max_abs)
      : std::runtime_error("solution blow-up detected at t=" + std::to_string(time) +
                           " (max |g| = " + std::to_string(max_abs) + ")"),
        time_(time),
        max_abs_(max_abs) {}

  double time() const noexcept { return time_; }
  double max_abs() const noexcept { return max_abs_; }

 private:
  double time_;
  double max_abs_;
};

/// A post-processing operation received too few (or unusable) samples.
class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace zk
