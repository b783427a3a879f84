#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace gridkg {

// All timestamps are UTC with second resolution.
using Timestamp = std::chrono::sys_seconds;
using Seconds = std::chrono::seconds;

// Accepts "YYYY-MM-DDTHH:MM[:SS[.fff]][Z|(+|-)HH:MM]" (a space may replace the
// 'T'). A missing offset means UTC. Fractional seconds are truncated.
std::optional<Timestamp> parseTimestamp(std::string_view text);

// Canonical xsd:dateTime form, e.g. "2021-05-20T10:00:00Z".
std::string formatTimestamp(Timestamp ts);

// "90s", "15m", "2h", "1d" or ISO-8601 "PT2H30M".
std::optional<Seconds> parseDuration(std::string_view text);

}  // namespace gridkg
