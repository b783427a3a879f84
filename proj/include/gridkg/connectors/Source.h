#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gridkg/util/Error.h"
#include "gridkg/util/Time.h"

namespace gridkg::connectors {

enum class ColumnType { String, Integer, Decimal, Timestamp, LatLon };

std::string_view toString(ColumnType type);
std::optional<ColumnType> parseColumnType(std::string_view name);

// A typed cell. std::monostate is null.
using Value = std::variant<std::monostate, std::string, std::int64_t, double, Timestamp>;

inline bool isNull(const Value& v) { return std::holds_alternative<std::monostate>(v); }

// Plain text of a value: strings as is, numbers in shortest decimal form,
// timestamps in ISO-8601 UTC; "" for null.
std::string toText(const Value& v);

// Parses `text` as a value of `type`; nullopt if it does not fit. Empty text
// is null.
std::optional<Value> parseValue(std::string_view text, ColumnType type);

using Row = std::map<std::string, Value>;

struct Column {
  std::string name;
  ColumnType type = ColumnType::String;
};

enum class FilterOp { Eq, Ne, Lt, Le, Gt, Ge };

std::string_view toString(FilterOp op);
std::optional<FilterOp> parseFilterOp(std::string_view text);

// column <op> constant. A null cell never satisfies a filter.
struct RowFilter {
  std::string column;
  FilterOp op = FilterOp::Eq;
  Value constant;

  RowFilter negated() const;
};

enum class SourceKind { Csv, WeatherJson };

struct SourceDescriptor {
  std::string id;
  SourceKind kind = SourceKind::Csv;
  std::filesystem::path path;
  std::vector<Column> columns;
  std::vector<std::string> keyColumns;
  std::optional<RowFilter> filter;

  const Column* column(std::string_view name) const;
};

// Rows in file order plus per-cell problems that were turned into nulls.
struct SourceData {
  std::vector<Row> rows;
  std::vector<std::string> warnings;
};

class HeaderMismatchError : public Error {
 public:
  HeaderMismatchError(const std::string& source, std::vector<std::string> missing,
                      std::vector<std::string> extra);
  const std::vector<std::string>& missing() const { return missing_; }
  const std::vector<std::string>& extra() const { return extra_; }

 private:
  std::vector<std::string> missing_;
  std::vector<std::string> extra_;
};

// Malformed CSV or JSON, or a weather object without "ts".
class SourceFormatError : public Error {
 public:
  using Error::Error;
};

class MissingKeyError : public Error {
 public:
  explicit MissingKeyError(std::string column)
      : Error("missing value in key column " + column), column_(std::move(column)) {}
  const std::string& column() const { return column_; }

 private:
  std::string column_;
};

class UniqueIdCollisionError : public Error {
 public:
  using Error::Error;
};

// Splits RFC-4180 CSV text into records of raw fields.
std::vector<std::vector<std::string>> parseCsvRecords(std::string_view text);

// The header must hold exactly the schema columns (any order). Cells that do
// not parse as their column type become null with a warning.
SourceData readCsv(const SourceDescriptor& source);

// An array of observation objects; the schema defaults to ts, lat, lon, city,
// temp_c, wind_speed_ms, ghi_wm2. Absent or mistyped fields become null,
// except "ts" which is mandatory.
SourceData readWeatherJson(const SourceDescriptor& source);

// Reads by kind, then applies the descriptor's filter.
SourceData loadSource(const SourceDescriptor& source);

bool satisfies(const Row& row, const RowFilter& filter);
std::vector<Row> filterRows(const std::vector<Row>& rows, const RowFilter& filter);

// Lowercase, spaces to '-', drop everything outside [a-z0-9-].
std::string slug(std::string_view text);
// slug of toText(v).
std::string slugValue(const Value& v);

// slug(v1) + "_" + slug(v2) + ... over the given columns. Throws
// MissingKeyError naming the first null or absent column.
std::string renderUniqueId(const std::vector<std::string>& columns, const Row& row);

// Throws UniqueIdCollisionError if two distinct key tuples render to the
// same id.
void checkUniqueIds(const std::vector<std::string>& columns, const std::vector<Row>& rows);

class SourceCatalog {
 public:
  SourceCatalog() = default;
  explicit SourceCatalog(std::vector<SourceDescriptor> sources);

  const std::vector<SourceDescriptor>& sources() const { return sources_; }
  const SourceDescriptor* find(std::string_view id) const;

 private:
  std::vector<SourceDescriptor> sources_;
};

// {"sources": [{"id", "kind": "csv"|"weather-json", "path", "columns":
// {name: type}, "key": [...], "filter": {"column", "op", "value"}}]}.
// Relative paths resolve against `baseDir`.
SourceCatalog parseSourceCatalog(std::string_view json, const std::filesystem::path& baseDir);
SourceCatalog loadSourceCatalog(const std::filesystem::path& path);

}  // namespace gridkg::connectors
