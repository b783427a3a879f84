#include "gridkg/query/Virtual.h"

#include <algorithm>
#include <set>

#include "gridkg/rdf/Turtle.h"
#include "gridkg/rdf/Vocab.h"

namespace gridkg::query {

using rdf::Term;
using rdf::Triple;

namespace {

bool isSlugChar(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-';
}

// Splits `iri` along the template: each placeholder takes a maximal run of
// slug characters. Returns nullopt when the template cannot produce `iri`,
// and an empty map when the split is ambiguous (no pruning possible).
std::optional<std::map<std::string, std::string>> matchTemplate(
    const mapping::IriTemplate& t, const std::string& iri) {
  const auto& parts = t.parts();
  const auto& columns = t.columns();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (!parts[i].empty() && isSlugChar(parts[i].front())) {
      return std::map<std::string, std::string>{};
    }
  }
  if (!iri.starts_with(parts.front())) return std::nullopt;
  std::map<std::string, std::string> out;
  std::size_t pos = parts.front().size();
  for (std::size_t i = 0; i < columns.size(); ++i) {
    std::size_t end = pos;
    while (end < iri.size() && isSlugChar(iri[end])) ++end;
    std::string value = iri.substr(pos, end - pos);
    auto [it, inserted] = out.emplace(columns[i], value);
    if (!inserted && it->second != value) return std::nullopt;
    pos = end;
    if (iri.compare(pos, parts[i + 1].size(), parts[i + 1]) != 0) return std::nullopt;
    pos += parts[i + 1].size();
  }
  if (pos != iri.size()) return std::nullopt;
  return out;
}

// Merges equalities; nullopt on a contradiction.
bool mergeEqualities(std::map<std::string, std::string>& into,
                     const std::map<std::string, std::string>& from) {
  for (const auto& [column, value] : from) {
    auto [it, inserted] = into.emplace(column, value);
    if (!inserted && it->second != value) return false;
  }
  return true;
}

const Term* constantOf(const PatternTerm& t) { return std::get_if<Term>(&t); }

std::string renderPatternTerm(const PatternTerm& t, const rdf::PrefixMap& prefixes) {
  if (const auto* v = std::get_if<Variable>(&t)) return "?" + v->name;
  return rdf::renderTerm(std::get<Term>(t), prefixes);
}

// Source column a variable at an object position takes its value from.
std::optional<std::string> objectColumn(const mapping::MappingRule& rule,
                                        const ScanAlternative& alt) {
  if (!alt.mapIndex) return std::nullopt;
  const auto& m = rule.maps[*alt.mapIndex];
  if (m.object.kind != mapping::ObjectSpec::Kind::Column) return std::nullopt;
  return m.object.column;
}

using Binding = std::vector<std::optional<Term>>;

}  // namespace

// _____________________________________________________________________________
VirtualPlan rewriteVirtual(const SelectQuery& query, std::vector<mapping::MappingRule> rules) {
  VirtualPlan plan;
  plan.query = query;
  plan.rules = std::move(rules);
  const std::string rdfType(vocab::kRdfType);

  for (std::size_t i = 0; i < query.patterns.size(); ++i) {
    const auto& p = query.patterns[i];
    const Term* predicate = constantOf(p.predicate);
    if (predicate && predicate->value() != rdfType) {
      bool produced = false;
      for (const auto& r : plan.rules) {
        for (const auto& m : r.maps) produced |= m.predicate == predicate->value();
      }
      if (!produced) throw RewriteError(predicate->value());
    }

    PatternScan scan;
    scan.pattern = i;
    for (std::size_t r = 0; r < plan.rules.size(); ++r) {
      const auto& rule = plan.rules[r];
      std::vector<std::optional<std::size_t>> candidates;
      if (rule.classIri) candidates.push_back(std::nullopt);
      for (std::size_t m = 0; m < rule.maps.size(); ++m) candidates.push_back(m);

      for (const auto& candidate : candidates) {
        ScanAlternative alt;
        alt.rule = r;
        alt.mapIndex = candidate;
        const std::string& predicateIri =
            candidate ? rule.maps[*candidate].predicate : rdfType;
        if (predicate && predicate->value() != predicateIri) continue;

        // Constants must be producible; templates turn them into column
        // equalities.
        if (const Term* s = constantOf(p.subject)) {
          if (!s->isIri()) continue;
          auto eq = matchTemplate(rule.subject, s->value());
          if (!eq || !mergeEqualities(alt.columnEqualities, *eq)) continue;
        }
        if (const Term* o = constantOf(p.object)) {
          if (!candidate) {
            if (*o != Term::iri(*rule.classIri)) continue;
          } else {
            const auto& spec = rule.maps[*candidate].object;
            if (spec.kind == mapping::ObjectSpec::Kind::Constant && spec.constant != *o) continue;
            if (spec.kind == mapping::ObjectSpec::Kind::Template) {
              if (!o->isIri()) continue;
              auto eq = matchTemplate(spec.iriTemplate, o->value());
              if (!eq || !mergeEqualities(alt.columnEqualities, *eq)) continue;
            }
            if (spec.kind == mapping::ObjectSpec::Kind::Column && !o->isLiteral()) continue;
          }
        }
        scan.alternatives.push_back(std::move(alt));
      }
    }

    // Single-variable filters on this pattern's object column.
    const auto* objectVar = std::get_if<Variable>(&p.object);
    bool columnBacked = objectVar && !scan.alternatives.empty() &&
                        std::all_of(scan.alternatives.begin(), scan.alternatives.end(),
                                    [&](const ScanAlternative& a) {
                                      return objectColumn(plan.rules[a.rule], a).has_value();
                                    });
    if (columnBacked) {
      for (std::size_t f = 0; f < query.filters.size(); ++f) {
        const auto& filter = query.filters[f];
        const auto* l = std::get_if<Variable>(&filter.lhs);
        const auto* r = std::get_if<Variable>(&filter.rhs);
        if ((l && !r && l->name == objectVar->name) || (r && !l && r->name == objectVar->name)) {
          scan.pushed.push_back({f, objectVar->name});
        }
      }
    }
    plan.scans.push_back(std::move(scan));
  }
  return plan;
}

// _____________________________________________________________________________
std::string VirtualPlan::describe() const {
  std::string out;
  const auto& prefixes = query.prefixes;
  for (const auto& scan : scans) {
    const auto& p = query.patterns[scan.pattern];
    out += "pattern " + std::to_string(scan.pattern + 1) + ": " +
           renderPatternTerm(p.subject, prefixes) + " " +
           renderPatternTerm(p.predicate, prefixes) + " " +
           renderPatternTerm(p.object, prefixes) + "\n";
    if (scan.alternatives.empty()) out += "  no rule produces this pattern\n";
    for (const auto& alt : scan.alternatives) {
      const auto& rule = rules[alt.rule];
      out += "  scan " + rule.source + " via rule " + rule.id + " (";
      out += alt.mapIndex ? "map " + rdf::renderTerm(Term::iri(rule.maps[*alt.mapIndex].predicate),
                                                     prefixes)
                          : std::string("class assertion");
      out += ")";
      for (const auto& [column, value] : alt.columnEqualities) {
        out += ", " + column + " = '" + value + "'";
      }
      out += "\n";
    }
    for (const auto& pushed : scan.pushed) {
      const auto& f = query.filters[pushed.filter];
      out += "  pushed filter: " + renderPatternTerm(f.lhs, prefixes) + " " +
             std::string(toString(f.op)) + " " + renderPatternTerm(f.rhs, prefixes) + "\n";
    }
  }
  // Joins on variables shared between patterns; subjects minted from the
  // same template join on that template's columns.
  auto variables = query.patternVariables();
  for (const auto& v : variables) {
    std::size_t uses = 0;
    for (const auto& p : query.patterns) {
      for (const auto* t : {&p.subject, &p.predicate, &p.object}) {
        if (const auto* var = std::get_if<Variable>(t); var && var->name == v) {
          ++uses;
          break;
        }
      }
    }
    if (uses > 1) out += "join on ?" + v + " (" + std::to_string(uses) + " patterns)\n";
  }
  return out;
}

// _____________________________________________________________________________
ResultTable evaluateVirtual(const VirtualPlan& plan, const connectors::SourceCatalog& sources) {
  const auto& query = plan.query;
  const auto variables = query.patternVariables();
  auto slotOf = [&variables](const std::string& name) {
    return static_cast<std::size_t>(std::find(variables.begin(), variables.end(), name) -
                                    variables.begin());
  };

  std::map<std::string, connectors::SourceData> loaded;
  auto rowsOf = [&](const std::string& id) -> const std::vector<connectors::Row>& {
    auto it = loaded.find(id);
    if (it == loaded.end()) {
      const auto* source = sources.find(id);
      if (!source) throw mapping::MappingError("unknown source '" + id + "'");
      it = loaded.emplace(id, connectors::loadSource(*source)).first;
    }
    return it->second.rows;
  };

  // Per pattern: bindings of the distinct triples it matches.
  std::vector<std::vector<Binding>> solutions;
  for (const auto& scan : plan.scans) {
    const auto& p = query.patterns[scan.pattern];
    std::set<Triple> matched;
    for (const auto& alt : scan.alternatives) {
      const auto& rule = plan.rules[alt.rule];
      const auto& source = *sources.find(rule.source);
      for (const auto& row : rowsOf(rule.source)) {
        bool keep = true;
        for (const auto& [column, value] : alt.columnEqualities) {
          auto it = row.find(column);
          keep &= it != row.end() && !connectors::isNull(it->second) &&
                  connectors::slugValue(it->second) == value;
        }
        if (!keep) continue;
        auto triple = mapping::applyMap(rule, alt.mapIndex, source, row);
        if (!triple) continue;
        if (!scan.pushed.empty()) {
          for (const auto& pushed : scan.pushed) {
            const auto& f = query.filters[pushed.filter];
            const Term& lhs = std::holds_alternative<Variable>(f.lhs) ? triple->object
                                                                       : std::get<Term>(f.lhs);
            const Term& rhs = std::holds_alternative<Variable>(f.rhs) ? triple->object
                                                                       : std::get<Term>(f.rhs);
            keep &= compareTerms(lhs, f.op, rhs).value_or(false);
          }
          if (!keep) continue;
        }
        matched.insert(std::move(*triple));
      }
    }

    std::vector<Binding> bindings;
    for (const auto& t : matched) {
      Binding b(variables.size());
      bool consistent = true;
      const PatternTerm* positions[3] = {&p.subject, &p.predicate, &p.object};
      const Term* values[3] = {&t.subject, &t.predicate, &t.object};
      for (int i = 0; i < 3 && consistent; ++i) {
        if (const auto* c = std::get_if<Term>(positions[i])) {
          consistent = *c == *values[i];
          continue;
        }
        auto& slot = b[slotOf(std::get<Variable>(*positions[i]).name)];
        if (slot && *slot != *values[i]) consistent = false;
        slot = *values[i];
      }
      if (consistent) bindings.push_back(std::move(b));
    }
    solutions.push_back(std::move(bindings));
  }

  // Hash joins, smallest pattern first, preferring patterns that share a
  // bound variable.
  std::vector<Binding> current = {Binding(variables.size())};
  std::vector<bool> bound(variables.size(), false);
  std::vector<bool> used(solutions.size(), false);
  for (std::size_t step = 0; step < solutions.size(); ++step) {
    std::size_t best = solutions.size();
    bool bestShares = false;
    for (std::size_t i = 0; i < solutions.size(); ++i) {
      if (used[i]) continue;
      bool shares = false;
      const auto& p = query.patterns[plan.scans[i].pattern];
      for (const auto* t : {&p.subject, &p.predicate, &p.object}) {
        if (const auto* v = std::get_if<Variable>(t)) shares |= bound[slotOf(v->name)];
      }
      if (best == solutions.size() || (shares && !bestShares) ||
          (shares == bestShares && solutions[i].size() < solutions[best].size())) {
        best = i;
        bestShares = shares;
      }
    }
    used[best] = true;

    std::vector<std::size_t> shared;
    std::vector<std::size_t> fresh;
    const auto& p = query.patterns[plan.scans[best].pattern];
    for (const auto* t : {&p.subject, &p.predicate, &p.object}) {
      if (const auto* v = std::get_if<Variable>(t)) {
        std::size_t s = slotOf(v->name);
        auto& list = bound[s] ? shared : fresh;
        if (std::find(list.begin(), list.end(), s) == list.end()) list.push_back(s);
      }
    }
    std::map<std::vector<Term>, std::vector<const Binding*>> table;
    for (const auto& b : solutions[best]) {
      std::vector<Term> key;
      for (std::size_t s : shared) key.push_back(*b[s]);
      table[std::move(key)].push_back(&b);
    }
    std::vector<Binding> next;
    for (const auto& row : current) {
      std::vector<Term> key;
      for (std::size_t s : shared) key.push_back(*row[s]);
      auto it = table.find(key);
      if (it == table.end()) continue;
      for (const auto* b : it->second) {
        Binding merged = row;
        for (std::size_t s : fresh) merged[s] = (*b)[s];
        next.push_back(std::move(merged));
      }
    }
    current = std::move(next);
    for (std::size_t s : fresh) bound[s] = true;
  }

  std::vector<std::vector<Term>> rows;
  for (const auto& b : current) {
    bool pass = true;
    for (const auto& f : query.filters) {
      const Term& lhs = std::holds_alternative<Variable>(f.lhs)
                            ? *b[slotOf(std::get<Variable>(f.lhs).name)]
                            : std::get<Term>(f.lhs);
      const Term& rhs = std::holds_alternative<Variable>(f.rhs)
                            ? *b[slotOf(std::get<Variable>(f.rhs).name)]
                            : std::get<Term>(f.rhs);
      pass &= compareTerms(lhs, f.op, rhs).value_or(false);
    }
    if (!pass) continue;
    std::vector<Term> row;
    for (const auto& v : b) row.push_back(*v);
    rows.push_back(std::move(row));
  }
  orderAndLimit(query, variables, rows);

  ResultTable table;
  table.columns = query.projection;
  for (const auto& row : rows) {
    std::vector<Term> out;
    for (const auto& name : query.projection) out.push_back(row[slotOf(name)]);
    table.rows.push_back(std::move(out));
  }
  return table;
}

}  // namespace gridkg::query
