#include "lsrp/time.hpp"

#include <cmath>
#include <stdexcept>

namespace lsrp {

std::int64_t parse_ticks(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty time value");
  std::int64_t whole = 0;
  std::int64_t frac = 0;
  int frac_digits = 0;
  bool seen_dot = false;
  bool seen_digit = false;
  for (char c : text) {
    if (c == '.') {
      if (seen_dot) throw std::invalid_argument("malformed time value: " + std::string(text));
      seen_dot = true;
      continue;
    }
    if (c < '0' || c > '9') throw std::invalid_argument("malformed time value: " + std::string(text));
    seen_digit = true;
    if (!seen_dot) {
      whole = whole * 10 + (c - '0');
      if (whole > (std::int64_t{1} << 40)) throw std::out_of_range("time value too large: " + std::string(text));
    } else {
      if (++frac_digits > 3) {
        if (c != '0') throw std::invalid_argument("time value finer than 0.001: " + std::string(text));
        continue;
      }
      frac = frac * 10 + (c - '0');
    }
  }
  if (!seen_digit) throw std::invalid_argument("malformed time value: " + std::string(text));
  for (int k = std::min(frac_digits, 3); k < 3; ++k) frac *= 10;
  return whole * kTicksPerUnit + frac;
}

Duration parse_duration(std::string_view text) {
  return Duration::from_ticks(parse_ticks(text));
}

std::int64_t ticks_from_double(double units) {
  if (!(units >= 0.0) || !std::isfinite(units)) throw std::invalid_argument("invalid time value");
  return std::llround(units * static_cast<double>(kTicksPerUnit));
}

std::string format_ticks(std::int64_t ticks) {
  std::string sign;
  if (ticks < 0) {
    sign = "-";
    ticks = -ticks;
  }
  std::string frac = std::to_string(ticks % kTicksPerUnit);
  frac.insert(0, 3 - frac.size(), '0');
  return sign + std::to_string(ticks / kTicksPerUnit) + "." + frac;
}

}  // namespace lsrp
