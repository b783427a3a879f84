#include "gridkg/connectors/Source.h"

#include <algorithm>
#include <cmath>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "gridkg/util/Numbers.h"

namespace gridkg::connectors {

using nlohmann::json;

namespace {

std::string readText(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read source file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

template <typename T>
int compareValues(const T& a, const T& b) {
  return a < b ? -1 : (b < a ? 1 : 0);
}

// Three-way comparison of two non-null values; nullopt if incomparable.
std::optional<int> compare(const Value& a, const Value& b) {
  auto number = [](const Value& v) -> std::optional<double> {
    if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
    if (const auto* d = std::get_if<double>(&v)) return *d;
    return std::nullopt;
  };
  if (auto x = number(a)) {
    if (auto y = number(b)) return compareValues(*x, *y);
    return std::nullopt;
  }
  if (a.index() != b.index()) return std::nullopt;
  if (const auto* s = std::get_if<std::string>(&a)) return compareValues(*s, std::get<std::string>(b));
  if (const auto* t = std::get_if<Timestamp>(&a)) return compareValues(*t, std::get<Timestamp>(b));
  return std::nullopt;
}

const std::vector<Column>& defaultWeatherColumns() {
  static const std::vector<Column> kColumns = {
      {"ts", ColumnType::Timestamp},    {"lat", ColumnType::LatLon},
      {"lon", ColumnType::LatLon},      {"city", ColumnType::String},
      {"temp_c", ColumnType::Decimal},  {"wind_speed_ms", ColumnType::Decimal},
      {"ghi_wm2", ColumnType::Decimal}};
  return kColumns;
}

std::optional<Value> jsonValue(const json& field, ColumnType type) {
  if (field.is_null()) return Value{};
  switch (type) {
    case ColumnType::String:
      if (field.is_string()) return Value{field.get<std::string>()};
      if (field.is_number_integer()) return Value{std::to_string(field.get<std::int64_t>())};
      return std::nullopt;
    case ColumnType::Integer:
      if (field.is_number_integer()) return Value{field.get<std::int64_t>()};
      if (field.is_string()) return parseValue(field.get<std::string>(), type);
      return std::nullopt;
    case ColumnType::Decimal:
    case ColumnType::LatLon:
      if (field.is_number()) {
        Value v{field.get<double>()};
        if (type == ColumnType::LatLon && std::abs(std::get<double>(v)) > 180.0) {
          return std::nullopt;
        }
        return v;
      }
      if (field.is_string()) return parseValue(field.get<std::string>(), type);
      return std::nullopt;
    case ColumnType::Timestamp:
      if (field.is_string()) return parseValue(field.get<std::string>(), type);
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

// _____________________________________________________________________________
std::string_view toString(ColumnType type) {
  switch (type) {
    case ColumnType::String:
      return "string";
    case ColumnType::Integer:
      return "integer";
    case ColumnType::Decimal:
      return "decimal";
    case ColumnType::Timestamp:
      return "timestamp";
    case ColumnType::LatLon:
      return "latlon";
  }
  return "string";
}

// _____________________________________________________________________________
std::optional<ColumnType> parseColumnType(std::string_view name) {
  for (auto type : {ColumnType::String, ColumnType::Integer, ColumnType::Decimal,
                    ColumnType::Timestamp, ColumnType::LatLon}) {
    if (toString(type) == name) return type;
  }
  return std::nullopt;
}

// _____________________________________________________________________________
std::string toText(const Value& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&v)) return formatDecimal(*d);
  if (const auto* t = std::get_if<Timestamp>(&v)) return formatTimestamp(*t);
  return {};
}

// _____________________________________________________________________________
std::optional<Value> parseValue(std::string_view text, ColumnType type) {
  if (text.empty()) return Value{};
  switch (type) {
    case ColumnType::String:
      return Value{std::string(text)};
    case ColumnType::Integer:
      if (auto i = parseInteger(text)) return Value{*i};
      return std::nullopt;
    case ColumnType::Decimal:
      if (auto d = parseDouble(text)) return Value{*d};
      return std::nullopt;
    case ColumnType::LatLon:
      if (auto d = parseDouble(text); d && std::abs(*d) <= 180.0) return Value{*d};
      return std::nullopt;
    case ColumnType::Timestamp:
      if (auto t = parseTimestamp(text)) return Value{*t};
      return std::nullopt;
  }
  return std::nullopt;
}

// _____________________________________________________________________________
std::string_view toString(FilterOp op) {
  switch (op) {
    case FilterOp::Eq:
      return "=";
    case FilterOp::Ne:
      return "!=";
    case FilterOp::Lt:
      return "<";
    case FilterOp::Le:
      return "<=";
    case FilterOp::Gt:
      return ">";
    case FilterOp::Ge:
      return ">=";
  }
  return "=";
}

// _____________________________________________________________________________
std::optional<FilterOp> parseFilterOp(std::string_view text) {
  for (auto op : {FilterOp::Eq, FilterOp::Ne, FilterOp::Lt, FilterOp::Le, FilterOp::Gt,
                  FilterOp::Ge}) {
    if (toString(op) == text) return op;
  }
  if (text == "==") return FilterOp::Eq;
  return std::nullopt;
}

// _____________________________________________________________________________
RowFilter RowFilter::negated() const {
  static constexpr FilterOp kInverse[] = {FilterOp::Ne, FilterOp::Eq, FilterOp::Ge,
                                          FilterOp::Gt, FilterOp::Le, FilterOp::Lt};
  return RowFilter{column, kInverse[static_cast<int>(op)], constant};
}

// _____________________________________________________________________________
const Column* SourceDescriptor::column(std::string_view name) const {
  for (const auto& c : columns) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

// _____________________________________________________________________________
HeaderMismatchError::HeaderMismatchError(const std::string& source,
                                         std::vector<std::string> missing,
                                         std::vector<std::string> extra)
    : Error([&] {
        std::string message = "header of " + source + " does not match the schema";
        auto list = [](const std::vector<std::string>& names) {
          std::string out;
          for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
          return out;
        };
        if (!missing.empty()) message += "; missing: " + list(missing);
        if (!extra.empty()) message += "; extra: " + list(extra);
        return message;
      }()),
      missing_(std::move(missing)),
      extra_(std::move(extra)) {}

// _____________________________________________________________________________
std::vector<std::vector<std::string>> parseCsvRecords(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool fieldStarted = false;
  std::size_t line = 1;
  std::size_t i = 0;
  if (text.starts_with("\xEF\xBB\xBF")) i = 3;

  auto endRecord = [&] {
    record.push_back(std::move(field));
    field.clear();
    // Blank lines carry no record.
    if (!(record.size() == 1 && record[0].empty() && !fieldStarted)) {
      records.push_back(std::move(record));
    }
    record.clear();
    fieldStarted = false;
  };

  for (; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
          // Only a separator or line end may follow a closing quote.
          char next = i + 1 < text.size() ? text[i + 1] : '\n';
          if (next != ',' && next != '\n' && next != '\r') {
            throw SourceFormatError("CSV line " + std::to_string(line) +
                                    ": unexpected character after closing quote");
          }
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty()) {
          throw SourceFormatError("CSV line " + std::to_string(line) +
                                  ": quote inside unquoted field");
        }
        quoted = true;
        fieldStarted = true;
        break;
      case ',':
        record.push_back(std::move(field));
        field.clear();
        fieldStarted = true;
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        endRecord();
        ++line;
        break;
      case '\n':
        endRecord();
        ++line;
        break;
      default:
        field += c;
        fieldStarted = true;
    }
  }
  if (quoted) throw SourceFormatError("CSV: unterminated quoted field");
  if (fieldStarted || !field.empty() || !record.empty()) endRecord();
  return records;
}

// _____________________________________________________________________________
SourceData readCsv(const SourceDescriptor& source) {
  auto records = parseCsvRecords(readText(source.path));
  SourceData data;
  if (records.empty()) throw SourceFormatError(source.path.string() + ": missing header row");

  const auto& header = records.front();
  std::vector<std::string> missing;
  std::vector<std::string> extra;
  std::set<std::string> seen(header.begin(), header.end());
  for (const auto& c : source.columns) {
    if (!seen.contains(c.name)) missing.push_back(c.name);
  }
  for (const auto& name : header) {
    if (!source.column(name)) extra.push_back(name);
  }
  if (!missing.empty() || !extra.empty() || seen.size() != header.size()) {
    throw HeaderMismatchError(source.path.filename().string(), missing, extra);
  }

  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& record = records[r];
    if (record.size() != header.size()) {
      throw SourceFormatError(source.path.filename().string() + " record " +
                              std::to_string(r + 1) + ": expected " +
                              std::to_string(header.size()) + " fields, found " +
                              std::to_string(record.size()));
    }
    Row row;
    for (std::size_t c = 0; c < header.size(); ++c) {
      const Column* column = source.column(header[c]);
      auto value = parseValue(record[c], column->type);
      if (!value) {
        data.warnings.push_back(source.path.filename().string() + " record " +
                                std::to_string(r + 1) + ": cannot read '" + record[c] +
                                "' as " + std::string(toString(column->type)) + " in column " +
                                column->name);
        value = Value{};
      }
      row.emplace(column->name, std::move(*value));
    }
    data.rows.push_back(std::move(row));
  }
  return data;
}

// _____________________________________________________________________________
SourceData readWeatherJson(const SourceDescriptor& source) {
  json document;
  try {
    document = json::parse(readText(source.path));
  } catch (const json::parse_error& e) {
    throw SourceFormatError(source.path.filename().string() + ": " + e.what());
  }
  if (!document.is_array()) {
    throw SourceFormatError(source.path.filename().string() + ": root must be an array");
  }
  const auto& columns = source.columns.empty() ? defaultWeatherColumns() : source.columns;
  SourceData data;
  for (std::size_t i = 0; i < document.size(); ++i) {
    const auto& object = document[i];
    std::string where = source.path.filename().string() + " item " + std::to_string(i);
    if (!object.is_object()) throw SourceFormatError(where + ": not an object");
    if (!object.contains("ts") || object["ts"].is_null()) {
      throw SourceFormatError(where + ": missing mandatory field ts");
    }
    Row row;
    for (const auto& column : columns) {
      Value value;
      if (object.contains(column.name)) {
        auto parsed = jsonValue(object[column.name], column.type);
        if (!parsed) {
          if (column.name == "ts") throw SourceFormatError(where + ": invalid ts");
          data.warnings.push_back(where + ": cannot read field " + column.name + " as " +
                                  std::string(toString(column.type)));
        } else {
          value = std::move(*parsed);
        }
      }
      row.emplace(column.name, std::move(value));
    }
    data.rows.push_back(std::move(row));
  }
  return data;
}

// _____________________________________________________________________________
SourceData loadSource(const SourceDescriptor& source) {
  SourceData data = source.kind == SourceKind::Csv ? readCsv(source) : readWeatherJson(source);
  if (source.filter) data.rows = filterRows(data.rows, *source.filter);
  return data;
}

// _____________________________________________________________________________
bool satisfies(const Row& row, const RowFilter& filter) {
  auto it = row.find(filter.column);
  if (it == row.end() || isNull(it->second) || isNull(filter.constant)) return false;
  auto c = compare(it->second, filter.constant);
  if (!c) return filter.op == FilterOp::Ne;
  switch (filter.op) {
    case FilterOp::Eq:
      return *c == 0;
    case FilterOp::Ne:
      return *c != 0;
    case FilterOp::Lt:
      return *c < 0;
    case FilterOp::Le:
      return *c <= 0;
    case FilterOp::Gt:
      return *c > 0;
    case FilterOp::Ge:
      return *c >= 0;
  }
  return false;
}

// _____________________________________________________________________________
std::vector<Row> filterRows(const std::vector<Row>& rows, const RowFilter& filter) {
  std::vector<Row> out;
  std::copy_if(rows.begin(), rows.end(), std::back_inserter(out),
               [&filter](const Row& r) { return satisfies(r, filter); });
  return out;
}

// _____________________________________________________________________________
std::string slug(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    auto u = static_cast<unsigned char>(c);
    if (c == ' ') {
      out += '-';
    } else if (std::isalnum(u) && u < 0x80) {
      out += static_cast<char>(std::tolower(u));
    } else if (c == '-') {
      out += c;
    }
  }
  return out;
}

// _____________________________________________________________________________
std::string slugValue(const Value& v) { return slug(toText(v)); }

// _____________________________________________________________________________
std::string renderUniqueId(const std::vector<std::string>& columns, const Row& row) {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    auto it = row.find(columns[i]);
    if (it == row.end() || isNull(it->second)) throw MissingKeyError(columns[i]);
    if (i > 0) out += '_';
    out += slugValue(it->second);
  }
  return out;
}

// _____________________________________________________________________________
void checkUniqueIds(const std::vector<std::string>& columns, const std::vector<Row>& rows) {
  std::map<std::string, std::vector<std::string>> tuples;
  for (const auto& row : rows) {
    std::string id;
    try {
      id = renderUniqueId(columns, row);
    } catch (const MissingKeyError&) {
      continue;
    }
    std::vector<std::string> tuple;
    for (const auto& c : columns) tuple.push_back(toText(row.at(c)));
    auto [it, inserted] = tuples.try_emplace(id, tuple);
    if (!inserted && it->second != tuple) {
      throw UniqueIdCollisionError("distinct keys render to the same id '" + id + "'");
    }
  }
}

// _____________________________________________________________________________
SourceCatalog::SourceCatalog(std::vector<SourceDescriptor> sources)
    : sources_(std::move(sources)) {}

// _____________________________________________________________________________
const SourceDescriptor* SourceCatalog::find(std::string_view id) const {
  for (const auto& s : sources_) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

// _____________________________________________________________________________
SourceCatalog parseSourceCatalog(std::string_view text, const std::filesystem::path& baseDir) {
  std::vector<SourceDescriptor> sources;
  try {
    json document = json::parse(text);
    for (const auto& entry : document.at("sources")) {
      SourceDescriptor s;
      s.id = entry.at("id").get<std::string>();
      auto where = "source " + s.id;
      if (std::any_of(sources.begin(), sources.end(),
                      [&s](const auto& other) { return other.id == s.id; })) {
        throw SourceFormatError("duplicate " + where);
      }
      auto kind = entry.at("kind").get<std::string>();
      if (kind == "csv") {
        s.kind = SourceKind::Csv;
      } else if (kind == "weather-json") {
        s.kind = SourceKind::WeatherJson;
      } else {
        throw SourceFormatError(where + ": unknown kind '" + kind + "'");
      }
      std::filesystem::path path = entry.at("path").get<std::string>();
      s.path = path.is_absolute() ? path : baseDir / path;
      if (entry.contains("columns")) {
        for (const auto& [name, type] : entry.at("columns").items()) {
          auto parsed = parseColumnType(type.get<std::string>());
          if (!parsed) throw SourceFormatError(where + ": unknown column type for " + name);
          s.columns.push_back({name, *parsed});
        }
      } else if (s.kind == SourceKind::WeatherJson) {
        s.columns = defaultWeatherColumns();
      }
      if (entry.contains("key")) {
        s.keyColumns = entry.at("key").get<std::vector<std::string>>();
        for (const auto& k : s.keyColumns) {
          if (!s.column(k)) throw SourceFormatError(where + ": key column " + k + " not in schema");
        }
      }
      if (entry.contains("filter")) {
        const auto& f = entry.at("filter");
        RowFilter filter;
        filter.column = f.at("column").get<std::string>();
        const Column* column = s.column(filter.column);
        if (!column) throw SourceFormatError(where + ": filter column not in schema");
        auto op = parseFilterOp(f.value("op", "="));
        if (!op) throw SourceFormatError(where + ": unknown filter operator");
        filter.op = *op;
        auto constant = jsonValue(f.at("value"), column->type);
        if (!constant || isNull(*constant)) {
          throw SourceFormatError(where + ": filter value does not fit column type");
        }
        filter.constant = std::move(*constant);
        s.filter = std::move(filter);
      }
      sources.push_back(std::move(s));
    }
  } catch (const json::exception& e) {
    throw SourceFormatError(std::string("source catalog: ") + e.what());
  }
  return SourceCatalog(std::move(sources));
}

// _____________________________________________________________________________
SourceCatalog loadSourceCatalog(const std::filesystem::path& path) {
  return parseSourceCatalog(readText(path), path.parent_path());
}

}  // namespace gridkg::connectors
