#include "gridkg/mapping/Mapping.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "gridkg/ontology/Ontology.h"
#include "gridkg/rdf/Turtle.h"
#include "gridkg/rdf/Vocab.h"
#include "gridkg/util/Numbers.h"

namespace gridkg::mapping {

using connectors::ColumnType;
using connectors::Row;
using connectors::Value;
using nlohmann::json;
using rdf::Term;
using rdf::Triple;

namespace {

bool isAllowedDatatype(std::string_view iri) {
  return iri == vocab::kXsdString || iri == vocab::kXsdInteger || iri == vocab::kXsdDecimal ||
         iri == vocab::kXsdDateTime || iri == vocab::kXsdBoolean || iri == vocab::kXsdDouble;
}

std::string_view defaultDatatype(ColumnType type) {
  switch (type) {
    case ColumnType::Integer:
      return vocab::kXsdInteger;
    case ColumnType::Decimal:
    case ColumnType::LatLon:
      return vocab::kXsdDecimal;
    case ColumnType::Timestamp:
      return vocab::kXsdDateTime;
    case ColumnType::String:
      break;
  }
  return vocab::kXsdString;
}

// Expands "prefix:local" with the standard prefixes; full IRIs pass through.
std::string expandName(std::string_view text, const std::string& where) {
  if (text.size() >= 2 && text.front() == '<' && text.back() == '>') {
    return std::string(text.substr(1, text.size() - 2));
  }
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw MappingError(where + ": '" + std::string(text) + "' is not an IRI");
  auto label = text.substr(0, colon);
  if (auto ns = rdf::standardPrefixes().namespaceOf(label)) {
    return *ns + std::string(text.substr(colon + 1));
  }
  if (text.substr(colon).starts_with("://")) return std::string(text);
  throw MappingError(where + ": unknown prefix '" + std::string(label) + "'");
}

std::string expandIri(std::string_view text, const std::string& where) {
  std::string iri = expandName(text, where);
  if (!rdf::isAbsoluteIri(iri) || !rdf::isValidIri(iri)) {
    throw MappingError(where + ": invalid IRI '" + iri + "'");
  }
  return iri;
}

void requireColumn(const connectors::SourceDescriptor& source, const std::string& column,
                   const std::string& where) {
  if (!source.column(column)) {
    throw MappingError(where + ": column '" + column + "' is not in source " + source.id);
  }
}

}  // namespace

// _____________________________________________________________________________
IriTemplate IriTemplate::parse(std::string_view text) {
  IriTemplate t;
  std::string where = "template '" + std::string(text) + "'";
  std::string current;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '}') throw MappingError(where + ": unbalanced '}'");
    if (c != '{') {
      current += c;
      continue;
    }
    auto close = text.find('}', i);
    if (close == std::string_view::npos) throw MappingError(where + ": unbalanced '{'");
    auto name = text.substr(i + 1, close - i - 1);
    if (name.empty() || name.find('{') != std::string_view::npos) {
      throw MappingError(where + ": bad placeholder");
    }
    t.parts_.push_back(std::move(current));
    current.clear();
    t.columns_.emplace_back(name);
    i = close;
  }
  t.parts_.push_back(std::move(current));
  t.parts_.front() = expandName(t.parts_.front(), where);
  t.text_ = std::string(text);
  // The fixed part must be a valid IRI prefix on its own.
  std::string probe;
  for (const auto& p : t.parts_) probe += p + "x";
  if (!rdf::isAbsoluteIri(probe) || !rdf::isValidIri(probe)) {
    throw MappingError(where + ": does not form an absolute IRI");
  }
  return t;
}

// _____________________________________________________________________________
std::optional<std::string> IriTemplate::expand(const Row& row) const {
  std::string out = parts_.front();
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    auto it = row.find(columns_[i]);
    if (it == row.end() || connectors::isNull(it->second)) return std::nullopt;
    out += connectors::slugValue(it->second);
    out += parts_[i + 1];
  }
  return out;
}

// _____________________________________________________________________________
std::vector<MappingRule> parseMappings(std::string_view text,
                                       const connectors::SourceCatalog& sources) {
  std::vector<MappingRule> rules;
  try {
    json document = json::parse(text);
    for (const auto& entry : document.at("rules")) {
      MappingRule rule;
      rule.id = entry.at("rule_id").get<std::string>();
      std::string where = "rule " + rule.id;
      if (std::any_of(rules.begin(), rules.end(),
                      [&rule](const auto& r) { return r.id == rule.id; })) {
        throw MappingError("duplicate " + where);
      }
      rule.source = entry.at("source").get<std::string>();
      const auto* source = sources.find(rule.source);
      if (!source) throw MappingError(where + ": unknown source '" + rule.source + "'");
      rule.subject = IriTemplate::parse(entry.at("subject_template").get<std::string>());
      for (const auto& c : rule.subject.columns()) requireColumn(*source, c, where);
      if (entry.contains("class") && !entry.at("class").is_null()) {
        rule.classIri = expandIri(entry.at("class").get<std::string>(), where);
      }
      for (const auto& m : entry.value("predicate_object_maps", json::array())) {
        PredicateObjectMap pom;
        pom.predicate = expandIri(m.at("predicate").get<std::string>(), where);
        int kinds = m.contains("column") + m.contains("constant") + m.contains("iri_template");
        if (kinds != 1) {
          throw MappingError(where + ": each map needs exactly one of column, constant, iri_template");
        }
        if (m.contains("column")) {
          pom.object.kind = ObjectSpec::Kind::Column;
          pom.object.column = m.at("column").get<std::string>();
          requireColumn(*source, pom.object.column, where);
          if (m.contains("datatype")) {
            pom.object.datatype = expandIri(m.at("datatype").get<std::string>(), where);
            if (!isAllowedDatatype(pom.object.datatype)) {
              throw MappingError(where + ": datatype <" + pom.object.datatype +
                                 "> is not supported");
            }
          }
        } else if (m.contains("constant")) {
          pom.object.kind = ObjectSpec::Kind::Constant;
          try {
            pom.object.constant = rdf::parseTurtleTerm(m.at("constant").get<std::string>(),
                                                       rdf::standardPrefixes());
          } catch (const Error& e) {
            throw MappingError(where + ": bad constant: " + e.what());
          }
        } else {
          pom.object.kind = ObjectSpec::Kind::Template;
          pom.object.iriTemplate = IriTemplate::parse(m.at("iri_template").get<std::string>());
          for (const auto& c : pom.object.iriTemplate.columns()) requireColumn(*source, c, where);
        }
        rule.maps.push_back(std::move(pom));
      }
      rules.push_back(std::move(rule));
    }
  } catch (const json::exception& e) {
    throw MappingError(std::string("mapping document: ") + e.what());
  }
  return rules;
}

// _____________________________________________________________________________
std::vector<MappingRule> loadMappings(const std::filesystem::path& path,
                                      const connectors::SourceCatalog& sources) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read mapping document " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parseMappings(buffer.str(), sources);
}

// _____________________________________________________________________________
Term objectLiteral(const Value& value, ColumnType type, const std::string& datatype) {
  std::string dt = datatype.empty() ? std::string(defaultDatatype(type)) : datatype;
  std::string lexical;
  if (dt == vocab::kXsdInteger) {
    if (const auto* d = std::get_if<double>(&value)) {
      lexical = std::to_string(static_cast<std::int64_t>(*d));
    }
  } else if (dt == vocab::kXsdDecimal) {
    if (const auto* i = std::get_if<std::int64_t>(&value)) {
      lexical = formatDecimal(static_cast<double>(*i));
    }
  } else if (dt == vocab::kXsdBoolean) {
    std::string text = connectors::toText(value);
    std::transform(text.begin(), text.end(), text.begin(), ::tolower);
    lexical = text == "1" || text == "true" || text == "yes" ? "true" : "false";
  }
  if (lexical.empty()) lexical = connectors::toText(value);
  return Term::literal(std::move(lexical), dt);
}

namespace {

std::optional<Term> objectFor(const PredicateObjectMap& m,
                              const connectors::SourceDescriptor& source, const Row& row) {
  switch (m.object.kind) {
    case ObjectSpec::Kind::Constant:
      return m.object.constant;
    case ObjectSpec::Kind::Template:
      if (auto iri = m.object.iriTemplate.expand(row)) return Term::iri(*iri);
      return std::nullopt;
    case ObjectSpec::Kind::Column: {
      auto it = row.find(m.object.column);
      if (it == row.end() || connectors::isNull(it->second)) return std::nullopt;
      return objectLiteral(it->second, source.column(m.object.column)->type, m.object.datatype);
    }
  }
  return std::nullopt;
}

}  // namespace

// _____________________________________________________________________________
std::optional<Triple> applyMap(const MappingRule& rule, std::optional<std::size_t> mapIndex,
                               const connectors::SourceDescriptor& source, const Row& row) {
  if (!mapIndex && !rule.classIri) return std::nullopt;
  auto subjectIri = rule.subject.expand(row);
  if (!subjectIri) return std::nullopt;
  if (!mapIndex) {
    return Triple{Term::iri(*subjectIri), Term::iri(std::string(vocab::kRdfType)),
                  Term::iri(*rule.classIri)};
  }
  const auto& m = rule.maps.at(*mapIndex);
  auto object = objectFor(m, source, row);
  if (!object) return std::nullopt;
  return Triple{Term::iri(*subjectIri), Term::iri(m.predicate), std::move(*object)};
}

// _____________________________________________________________________________
RuleOutput applyRule(const MappingRule& rule, const connectors::SourceDescriptor& source,
                     const Row& row) {
  RuleOutput out;
  if (!rule.subject.expand(row)) {
    out.skipped = true;
    return out;
  }
  if (auto t = applyMap(rule, std::nullopt, source, row)) out.triples.push_back(std::move(*t));
  for (std::size_t i = 0; i < rule.maps.size(); ++i) {
    if (auto t = applyMap(rule, i, source, row)) {
      out.triples.push_back(std::move(*t));
    } else {
      ++out.droppedAssertions;
    }
  }
  return out;
}

// _____________________________________________________________________________
MaterializationReport& MaterializationReport::operator+=(const MaterializationReport& other) {
  rowsRead += other.rowsRead;
  rowsSkipped += other.rowsSkipped;
  triplesGenerated += other.triplesGenerated;
  duplicatesSuppressed += other.duplicatesSuppressed;
  droppedAssertions += other.droppedAssertions;
  warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
  return *this;
}

// _____________________________________________________________________________
SourceRows loadRuleSources(const std::vector<MappingRule>& rules,
                           const connectors::SourceCatalog& sources) {
  SourceRows out;
  for (const auto& rule : rules) {
    const auto* source = sources.find(rule.source);
    if (!source) throw MappingError("rule " + rule.id + ": unknown source '" + rule.source + "'");
    auto it = out.find(rule.source);
    if (it == out.end()) it = out.emplace(rule.source, connectors::loadSource(*source)).first;
    connectors::checkUniqueIds(rule.subject.columns(), it->second.rows);
  }
  return out;
}

// _____________________________________________________________________________
MaterializationReport materialize(const std::vector<MappingRule>& rules,
                                  const connectors::SourceCatalog& sources,
                                  rdf::TripleStore& store, const rdf::TripleStore* ontology) {
  MaterializationReport report;
  SourceRows data = loadRuleSources(rules, sources);
  for (const auto& [id, source] : data) {
    report.rowsRead += source.rows.size();
    report.warnings.insert(report.warnings.end(), source.warnings.begin(),
                           source.warnings.end());
  }

  std::set<std::string> ungrounded;
  auto ground = [&](const std::string& iri, std::string_view role) {
    if (!ontology || ontology::isDeclared(*ontology, iri) || ungrounded.contains(iri)) return;
    ungrounded.insert(iri);
    report.warnings.push_back(std::string(role) + " <" + iri + "> is not declared in the ontology");
  };
  for (const auto& rule : rules) {
    if (rule.classIri) ground(*rule.classIri, "class");
    for (const auto& m : rule.maps) ground(m.predicate, "predicate");
  }

  for (const auto& rule : rules) {
    const auto& source = *sources.find(rule.source);
    for (const auto& row : data.at(rule.source).rows) {
      auto out = applyRule(rule, source, row);
      if (out.skipped) {
        ++report.rowsSkipped;
        continue;
      }
      report.droppedAssertions += out.droppedAssertions;
      report.triplesGenerated += out.triples.size();
      for (const auto& t : out.triples) {
        if (!store.insert(t)) ++report.duplicatesSuppressed;
      }
    }
  }
  return report;
}

}  // namespace gridkg::mapping
