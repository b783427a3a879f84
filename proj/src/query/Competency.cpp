#include "gridkg/query/Competency.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "gridkg/query/Evaluator.h"
#include "gridkg/rdf/Vocab.h"
#include "gridkg/util/Numbers.h"
#include "gridkg/util/Time.h"

namespace gridkg::query {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void catalogError(std::size_t line, const std::string& message) {
  throw ParseError("competency catalog: " + message, line, 1, "");
}

ParameterType parameterType(std::string_view name, std::size_t line) {
  if (name == "string") return ParameterType::String;
  if (name == "iri") return ParameterType::Iri;
  if (name == "dateTime") return ParameterType::DateTime;
  if (name == "integer") return ParameterType::Integer;
  if (name == "decimal") return ParameterType::Decimal;
  catalogError(line, "unknown parameter type '" + std::string(name) + "'");
}

CqParameter parseParameter(std::string_view spec, std::size_t line) {
  // name:type[=default]
  auto colon = spec.find(':');
  if (colon == std::string_view::npos) catalogError(line, "parameter needs a type");
  CqParameter p;
  p.name = std::string(trim(spec.substr(0, colon)));
  auto rest = spec.substr(colon + 1);
  auto eq = rest.find('=');
  p.type = parameterType(trim(rest.substr(0, eq)), line);
  if (eq != std::string_view::npos) p.defaultValue = std::string(trim(rest.substr(eq + 1)));
  return p;
}

std::string renderValue(const CqParameter& p, const std::string& value) {
  auto typed = [&value](std::string_view datatype) {
    return "\"" + value + "\"^^<" + std::string(datatype) + ">";
  };
  switch (p.type) {
    case ParameterType::String:
      return "\"" + rdf::escapeString(value) + "\"";
    case ParameterType::Iri: {
      auto colon = value.find(':');
      if (colon != std::string::npos) {
        auto ns = rdf::standardPrefixes().namespaceOf(value.substr(0, colon));
        if (ns) return "<" + *ns + value.substr(colon + 1) + ">";
      }
      if (rdf::isAbsoluteIri(value) && rdf::isValidIri(value)) return "<" + value + ">";
      break;
    }
    case ParameterType::DateTime:
      if (auto ts = parseTimestamp(value)) {
        return "\"" + formatTimestamp(*ts) + "\"^^<" + std::string(vocab::kXsdDateTime) + ">";
      }
      break;
    case ParameterType::Integer:
      if (parseInteger(value)) return typed(vocab::kXsdInteger);
      break;
    case ParameterType::Decimal:
      if (parseDouble(value)) return typed(vocab::kXsdDecimal);
      break;
  }
  throw Error("invalid value '" + value + "' for parameter " + p.name);
}

}  // namespace

// _____________________________________________________________________________
const CompetencyQuestion* CompetencyCatalog::find(std::string_view id) const {
  for (const auto& q : questions_) {
    if (q.id == id) return &q;
  }
  return nullptr;
}

// _____________________________________________________________________________
const CompetencyQuestion& CompetencyCatalog::at(std::string_view id) const {
  if (const auto* q = find(id)) return *q;
  throw UnknownCompetencyQuestionError(std::string(id));
}

// _____________________________________________________________________________
CompetencyCatalog parseCatalog(std::string_view text) {
  std::vector<CompetencyQuestion> questions;
  std::string* block = nullptr;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineNo = 0;
  while (std::getline(in, raw)) {
    ++lineNo;
    std::string_view line = raw;
    bool indented = !line.empty() && (line.front() == ' ' || line.front() == '\t');
    if (block && indented) {
      *block += std::string(trim(line)) + "\n";
      continue;
    }
    block = nullptr;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') catalogError(lineNo, "unterminated section header");
      CompetencyQuestion q;
      q.id = std::string(trim(line.substr(1, line.size() - 2)));
      if (std::any_of(questions.begin(), questions.end(),
                      [&q](const auto& other) { return other.id == q.id; })) {
        catalogError(lineNo, "duplicate id " + q.id);
      }
      questions.push_back(std::move(q));
      continue;
    }
    if (questions.empty()) catalogError(lineNo, "entry outside of a section");
    auto eq = line.find('=');
    if (eq == std::string_view::npos) catalogError(lineNo, "expected key = value");
    auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    auto& q = questions.back();
    if (key == "title") {
      q.title = std::string(value);
    } else if (key == "param") {
      q.parameters.push_back(parseParameter(value, lineNo));
    } else if (key == "expect_rows") {
      auto n = parseInteger(value);
      if (!n || *n < 0) catalogError(lineNo, "expect_rows must be a count");
      q.expectedRows = static_cast<std::size_t>(*n);
    } else if (key == "query") {
      q.queryTemplate = std::string(value);
      block = &q.queryTemplate;
    } else if (key == "closure_free") {
      q.closureFreeTemplate = std::string(value);
      block = &*q.closureFreeTemplate;
    } else {
      catalogError(lineNo, "unknown key '" + std::string(key) + "'");
    }
  }
  for (const auto& q : questions) {
    if (q.queryTemplate.empty()) throw Error("competency question " + q.id + " has no query");
  }
  return CompetencyCatalog(std::move(questions));
}

// _____________________________________________________________________________
CompetencyCatalog loadCatalog(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read competency catalog " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parseCatalog(buffer.str());
}

// _____________________________________________________________________________
std::string instantiate(const CompetencyQuestion& question, const CqParams& params,
                        bool closureFree) {
  std::string text = closureFree && question.closureFreeTemplate
                         ? *question.closureFreeTemplate
                         : question.queryTemplate;
  for (const auto& p : question.parameters) {
    auto it = params.find(p.name);
    const std::string* value = it != params.end() ? &it->second
                               : p.defaultValue   ? &*p.defaultValue
                                                  : nullptr;
    if (!value) throw Error("missing parameter " + p.name + " for " + question.id);
    std::string rendered = renderValue(p, *value);
    std::string placeholder = "{{" + p.name + "}}";
    for (auto pos = text.find(placeholder); pos != std::string::npos;
         pos = text.find(placeholder, pos + rendered.size())) {
      text.replace(pos, placeholder.size(), rendered);
    }
  }
  if (auto pos = text.find("{{"); pos != std::string::npos) {
    throw Error("undeclared placeholder in " + question.id + ": " +
                text.substr(pos, text.find("}}", pos) + 2 - pos));
  }
  return text;
}

// _____________________________________________________________________________
std::vector<CompetencyResult> checkCompetency(const rdf::TripleStore& graph,
                                              const CompetencyCatalog& catalog,
                                              const std::vector<std::string>& ids,
                                              const CqParams& params,
                                              bool closureFree) {
  std::vector<const CompetencyQuestion*> selected;
  if (ids.empty()) {
    for (const auto& q : catalog.questions()) selected.push_back(&q);
  } else {
    for (const auto& id : ids) selected.push_back(&catalog.at(id));
  }

  std::vector<CompetencyResult> results;
  for (const auto* q : selected) {
    CompetencyResult r;
    r.id = q->id;
    r.title = q->title;
    bool defaultsOnly = std::none_of(q->parameters.begin(), q->parameters.end(),
                                     [&params](const auto& p) { return params.contains(p.name); });
    if (defaultsOnly) r.expectedRows = q->expectedRows;
    r.rows = evaluate(parseQuery(instantiate(*q, params, closureFree)), graph);
    r.rowCount = r.rows.rows.size();
    if (r.expectedRows) {
      r.passed = r.rowCount == *r.expectedRows;
      r.message = std::to_string(r.rowCount) + " rows, expected " +
                  std::to_string(*r.expectedRows);
    } else {
      r.passed = r.rowCount > 0;
      r.message = std::to_string(r.rowCount) + " rows";
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace gridkg::query
