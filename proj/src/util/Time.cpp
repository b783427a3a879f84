#include "gridkg/util/Time.h"

#include <cctype>
#include <cstdio>

namespace gridkg {

namespace {

bool readDigits(std::string_view text, std::size_t& pos, std::size_t count,
                int& out) {
  if (pos + count > text.size()) return false;
  int value = 0;
  for (std::size_t i = 0; i < count; ++i) {
    char c = text[pos + i];
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    value = value * 10 + (c - '0');
  }
  pos += count;
  out = value;
  return true;
}

bool expect(std::string_view text, std::size_t& pos, char c) {
  if (pos < text.size() && text[pos] == c) {
    ++pos;
    return true;
  }
  return false;
}

}  // namespace

// _____________________________________________________________________________
std::optional<Timestamp> parseTimestamp(std::string_view text) {
  using namespace std::chrono;
  std::size_t pos = 0;
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  if (!readDigits(text, pos, 4, y) || !expect(text, pos, '-') ||
      !readDigits(text, pos, 2, mo) || !expect(text, pos, '-') ||
      !readDigits(text, pos, 2, d)) {
    return std::nullopt;
  }
  if (!expect(text, pos, 'T') && !expect(text, pos, ' ')) return std::nullopt;
  if (!readDigits(text, pos, 2, h) || !expect(text, pos, ':') ||
      !readDigits(text, pos, 2, mi)) {
    return std::nullopt;
  }
  if (expect(text, pos, ':')) {
    if (!readDigits(text, pos, 2, s)) return std::nullopt;
    if (expect(text, pos, '.')) {
      std::size_t start = pos;
      while (pos < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[pos]))) {
        ++pos;
      }
      if (pos == start) return std::nullopt;
    }
  }
  int offsetMinutes = 0;
  if (pos < text.size()) {
    if (text[pos] == 'Z') {
      ++pos;
    } else if (text[pos] == '+' || text[pos] == '-') {
      int sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      int oh = 0, om = 0;
      if (!readDigits(text, pos, 2, oh) || !expect(text, pos, ':') ||
          !readDigits(text, pos, 2, om)) {
        return std::nullopt;
      }
      offsetMinutes = sign * (oh * 60 + om);
    }
  }
  if (pos != text.size()) return std::nullopt;
  if (h > 23 || mi > 59 || s > 60) return std::nullopt;
  year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                     day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return sys_days{ymd} + hours{h} + minutes{mi} + seconds{s} -
         minutes{offsetMinutes};
}

// _____________________________________________________________________________
std::string formatTimestamp(Timestamp ts) {
  using namespace std::chrono;
  auto days = floor<std::chrono::days>(ts);
  year_month_day ymd{days};
  hh_mm_ss hms{ts - days};
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%04d-%02u-%02uT%02d:%02d:%02dZ",
                static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()),
                static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buffer;
}

// _____________________________________________________________________________
std::optional<Seconds> parseDuration(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text.front() == 'P' || text.front() == 'p') {
    // ISO-8601 subset: PnDTnHnMnS.
    std::size_t pos = 1;
    bool inTime = false;
    long long total = 0;
    bool any = false;
    while (pos < text.size()) {
      if (text[pos] == 'T' || text[pos] == 't') {
        inTime = true;
        ++pos;
        continue;
      }
      long long value = 0;
      std::size_t start = pos;
      while (pos < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[pos]))) {
        value = value * 10 + (text[pos] - '0');
        ++pos;
      }
      if (pos == start || pos >= text.size()) return std::nullopt;
      char unit = static_cast<char>(std::toupper(text[pos++]));
      if (unit == 'D' && !inTime) {
        total += value * 86400;
      } else if (unit == 'H' && inTime) {
        total += value * 3600;
      } else if (unit == 'M' && inTime) {
        total += value * 60;
      } else if (unit == 'S' && inTime) {
        total += value;
      } else {
        return std::nullopt;
      }
      any = true;
    }
    if (!any) return std::nullopt;
    return Seconds{total};
  }
  std::size_t pos = 0;
  long long value = 0;
  while (pos < text.size() &&
         std::isdigit(static_cast<unsigned char>(text[pos]))) {
    value = value * 10 + (text[pos] - '0');
    ++pos;
  }
  if (pos == 0 || pos + 1 != text.size()) return std::nullopt;
  switch (text[pos]) {
    case 's':
      return Seconds{value};
    case 'm':
      return Seconds{value * 60};
    case 'h':
      return Seconds{value * 3600};
    case 'd':
      return Seconds{value * 86400};
    default:
      return std::nullopt;
  }
}

}  // namespace gridkg
