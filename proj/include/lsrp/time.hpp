#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <string_view>

namespace lsrp {

// Fixed-point time. One time unit is kTicksPerUnit ticks; all planner
// arithmetic is exact integer arithmetic on ticks.
inline constexpr std::int64_t kTicksPerUnit = 1000;

class Duration {
public:
  constexpr Duration() = default;
  static constexpr Duration from_ticks(std::int64_t t) { return Duration(t); }
  static constexpr Duration from_units(std::int64_t u) { return Duration(u * kTicksPerUnit); }
  static constexpr Duration infinity() { return Duration(std::numeric_limits<std::int64_t>::max() / 4); }

  constexpr std::int64_t ticks() const { return ticks_; }
  constexpr bool is_infinite() const { return ticks_ >= infinity().ticks_; }
  double units() const { return static_cast<double>(ticks_) / kTicksPerUnit; }

  constexpr Duration operator+(Duration o) const { return Duration(ticks_ + o.ticks_); }
  constexpr Duration operator-(Duration o) const { return Duration(ticks_ - o.ticks_); }
  constexpr Duration operator*(std::int64_t k) const { return Duration(ticks_ * k); }
  constexpr Duration& operator+=(Duration o) { ticks_ += o.ticks_; return *this; }
  constexpr auto operator<=>(const Duration&) const = default;

private:
  constexpr explicit Duration(std::int64_t t) : ticks_(t) {}
  std::int64_t ticks_ = 0;
};

class TimePoint {
public:
  constexpr TimePoint() = default;
  static constexpr TimePoint from_ticks(std::int64_t t) { return TimePoint(t); }
  static constexpr TimePoint from_units(std::int64_t u) { return TimePoint(u * kTicksPerUnit); }
  static constexpr TimePoint zero() { return TimePoint(0); }

  constexpr std::int64_t ticks() const { return ticks_; }
  double units() const { return static_cast<double>(ticks_) / kTicksPerUnit; }

  constexpr TimePoint operator+(Duration d) const { return TimePoint(ticks_ + d.ticks()); }
  constexpr Duration operator-(TimePoint o) const { return Duration::from_ticks(ticks_ - o.ticks_); }
  constexpr auto operator<=>(const TimePoint&) const = default;

private:
  constexpr explicit TimePoint(std::int64_t t) : ticks_(t) {}
  std::int64_t ticks_ = 0;
};

// Parses a non-negative decimal such as "5", "5.0" or "2.125" exactly.
// More than three fractional digits is an error (below the time quantum).
std::int64_t parse_ticks(std::string_view text);
Duration parse_duration(std::string_view text);
// Converts a JSON-style double to ticks, rounding to the nearest quantum.
std::int64_t ticks_from_double(double units);

// Always three fractional digits: 5000 ticks -> "5.000".
std::string format_ticks(std::int64_t ticks);
inline std::string to_string(Duration d) { return format_ticks(d.ticks()); }
inline std::string to_string(TimePoint t) { return format_ticks(t.ticks()); }

}  // namespace lsrp

template <>
struct std::hash<lsrp::TimePoint> {
  std::size_t operator()(const lsrp::TimePoint& t) const noexcept {
    return std::hash<std::int64_t>{}(t.ticks());
  }
};
