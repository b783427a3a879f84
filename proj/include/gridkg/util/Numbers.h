#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace gridkg {

std::optional<std::int64_t> parseInteger(std::string_view text);
std::optional<double> parseDouble(std::string_view text);

// Shortest round-tripping fixed-point form that always carries a fractional
// part: 350 -> "350.0", 44.8 -> "44.8". This is the canonical xsd:decimal
// lexical form used everywhere a double becomes a literal.
std::string formatDecimal(double value);

}  // namespace gridkg
