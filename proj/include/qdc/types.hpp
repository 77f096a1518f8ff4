#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace qdc {

// All simulation time is integer nanoseconds. Event ordering stays exact and
// the paper-scale range (1 us attempts up to multi-second makespans) fits
// comfortably in 64 bits.
using Duration = std::int64_t;

inline constexpr Duration kNanosecond = 1;
inline constexpr Duration kMicrosecond = 1'000;
inline constexpr Duration kMillisecond = 1'000'000;
inline constexpr Duration kSecond = 1'000'000'000;

// Sentinel for "no cutoff": an EPR pair held under this value never expires.
inline constexpr Duration kNoCutoff = std::numeric_limits<Duration>::max();

struct ParseError : std::runtime_error {
  int line = 0;
  int column = 0;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg + " (line " + std::to_string(line_) + ", column " +
                           std::to_string(col_) + ")"),
        line(line_),
        column(col_) {}
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SimulationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qdc
