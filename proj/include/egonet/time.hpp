#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>

namespace egonet {

/// UTC instant with second precision.
using Instant = std::chrono::sys_seconds;
using Seconds = std::chrono::seconds;

inline constexpr std::int64_t kSecondsPerDay = 86400;
inline constexpr double kDaysPerYear = 365.25;
inline constexpr double kSecondsPerYear = kDaysPerYear * kSecondsPerDay;

/// Earliest acceptable tweet timestamp (2006-01-01T00:00:00Z).
Instant twitter_epoch();

/// Parses `YYYY-MM-DDTHH:MM:SS` followed by `Z` or `+00:00`, optionally with
/// fractional seconds (truncated). Throws ValidationError on anything else.
Instant parse_iso8601(std::string_view text);

/// Formats as `YYYY-MM-DDTHH:MM:SSZ`.
std::string format_iso8601(Instant t);

inline double to_days(Seconds d) { return static_cast<double>(d.count()) / kSecondsPerDay; }
inline double to_years(Seconds d) { return static_cast<double>(d.count()) / kSecondsPerYear; }
inline Seconds days(std::int64_t n) { return Seconds{n * kSecondsPerDay}; }

/// Seconds since the Unix epoch.
inline std::int64_t unix_seconds(Instant t) { return t.time_since_epoch().count(); }
inline Instant from_unix(std::int64_t s) { return Instant{Seconds{s}}; }

}  // namespace egonet
