#include "gridkg/util/Numbers.h"

#include <charconv>
#include <cmath>

namespace gridkg {

// _____________________________________________________________________________
std::optional<std::int64_t> parseInteger(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    return std::nullopt;
  }
  return value;
}

// _____________________________________________________________________________
std::optional<double> parseDouble(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty() ||
      !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

// _____________________________________________________________________________
std::string formatDecimal(double value) {
  if (value == 0.0) return "0.0";  // also folds -0.0
  char buffer[400];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                 std::chars_format::fixed);
  std::string out(buffer, ec == std::errc{} ? ptr : buffer);
  if (out.find('.') == std::string::npos) out += ".0";
  return out;
}

}  // namespace gridkg
