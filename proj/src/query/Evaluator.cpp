#include "gridkg/query/Evaluator.h"

#include <algorithm>
#include <map>
#include <numeric>

#include "gridkg/rdf/Turtle.h"

namespace gridkg::query {

using rdf::IdTriple;
using rdf::Term;
using rdf::TermId;

namespace {

// A pattern position compiled against one store: either a constant id, a
// variable slot, or a constant the store has never seen.
struct Slot {
  enum Kind { Constant, Var, Missing } kind = Constant;
  TermId id = 0;
  std::size_t var = 0;
};

struct CompiledFilter {
  const Filter* filter;
  std::vector<std::size_t> vars;
};

class Evaluation {
 public:
  Evaluation(const SelectQuery& query, const rdf::TripleStore& store,
             const std::vector<std::size_t>& order)
      : query_(query), store_(store), variables_(query.patternVariables()) {
    for (std::size_t i : order) patterns_.push_back(compile(query.patterns[i]));
    // Filters run after the first pattern that binds their last variable.
    filtersAt_.resize(patterns_.size() + 1);
    std::vector<bool> bound(variables_.size(), false);
    std::vector<bool> placed(query.filters.size(), false);
    for (std::size_t step = 0; step <= patterns_.size(); ++step) {
      for (std::size_t f = 0; f < query.filters.size(); ++f) {
        if (placed[f]) continue;
        CompiledFilter cf{&query.filters[f], {}};
        bool ready = true;
        for (const auto* side : {&query.filters[f].lhs, &query.filters[f].rhs}) {
          if (const auto* v = std::get_if<Variable>(side)) {
            std::size_t slot = variableSlot(v->name);
            cf.vars.push_back(slot);
            ready &= bound[slot];
          }
        }
        if (ready) {
          filtersAt_[step].push_back(std::move(cf));
          placed[f] = true;
        }
      }
      if (step < patterns_.size()) {
        for (const auto& s : patterns_[step]) {
          if (s.kind == Slot::Var) bound[s.var] = true;
        }
      }
    }
  }

  ResultTable run() {
    binding_.assign(variables_.size(), std::nullopt);
    bool impossible = std::any_of(patterns_.begin(), patterns_.end(), [](const auto& p) {
      return std::any_of(p.begin(), p.end(),
                         [](const Slot& s) { return s.kind == Slot::Missing; });
    });
    if (!impossible && passesFilters(0)) extend(0);

    orderAndLimit(query_, variables_, rows_);
    ResultTable table;
    table.columns = query_.projection;
    std::vector<std::size_t> projected;
    for (const auto& name : query_.projection) projected.push_back(variableSlot(name));
    table.rows.reserve(rows_.size());
    for (auto& row : rows_) {
      std::vector<Term> out;
      out.reserve(projected.size());
      for (std::size_t i : projected) out.push_back(row[i]);
      table.rows.push_back(std::move(out));
    }
    return table;
  }

 private:
  std::size_t variableSlot(const std::string& name) const {
    return static_cast<std::size_t>(
        std::find(variables_.begin(), variables_.end(), name) - variables_.begin());
  }

  Slot compileTerm(const PatternTerm& t) {
    if (const auto* v = std::get_if<Variable>(&t)) {
      return Slot{Slot::Var, 0, variableSlot(v->name)};
    }
    auto id = store_.lookup(std::get<Term>(t));
    if (!id) return Slot{Slot::Missing};
    return Slot{Slot::Constant, *id};
  }

  std::array<Slot, 3> compile(const TriplePattern& p) {
    return {compileTerm(p.subject), compileTerm(p.predicate), compileTerm(p.object)};
  }

  std::optional<TermId> resolve(const Slot& s) const {
    if (s.kind == Slot::Constant) return s.id;
    return binding_[s.var];
  }

  const Term& valueOf(const PatternTerm& t) const {
    if (const auto* v = std::get_if<Variable>(&t)) {
      return store_.decode(*binding_[variableSlot(v->name)]);
    }
    return std::get<Term>(t);
  }

  bool passesFilters(std::size_t step) const {
    for (const auto& cf : filtersAt_[step]) {
      auto result = compareTerms(valueOf(cf.filter->lhs), cf.filter->op,
                                 valueOf(cf.filter->rhs));
      if (!result.value_or(false)) return false;
    }
    return true;
  }

  void extend(std::size_t step) {
    if (step == patterns_.size()) {
      std::vector<Term> row;
      row.reserve(binding_.size());
      for (const auto& id : binding_) row.push_back(store_.decode(*id));
      rows_.push_back(std::move(row));
      return;
    }
    const auto& p = patterns_[step];
    auto matches = store_.matchIds(resolve(p[0]), resolve(p[1]), resolve(p[2]));
    for (const auto& t : matches) {
      const TermId values[3] = {t.s, t.p, t.o};
      std::vector<std::size_t> assigned;
      bool consistent = true;
      for (int i = 0; i < 3 && consistent; ++i) {
        if (p[i].kind != Slot::Var) continue;
        auto& b = binding_[p[i].var];
        if (!b) {
          b = values[i];
          assigned.push_back(p[i].var);
        } else if (*b != values[i]) {
          // The same variable twice in one pattern.
          consistent = false;
        }
      }
      if (consistent && passesFilters(step + 1)) extend(step + 1);
      for (std::size_t v : assigned) binding_[v].reset();
    }
  }

  const SelectQuery& query_;
  const rdf::TripleStore& store_;
  std::vector<std::string> variables_;
  std::vector<std::array<Slot, 3>> patterns_;
  std::vector<std::vector<CompiledFilter>> filtersAt_;
  std::vector<std::optional<TermId>> binding_;
  std::vector<std::vector<Term>> rows_;
};

}  // namespace

// _____________________________________________________________________________
std::vector<std::size_t> joinOrder(const SelectQuery& query,
                                   const rdf::TripleStore& store) {
  const auto& patterns = query.patterns;
  std::vector<std::size_t> order;
  std::vector<bool> used(patterns.size(), false);
  std::vector<std::string> bound;
  auto isBound = [&bound](const std::string& name) {
    return std::find(bound.begin(), bound.end(), name) != bound.end();
  };

  // Cardinality of the constant part of each pattern; unknown constants
  // mean no match at all.
  std::vector<std::size_t> cardinality;
  for (const auto& p : patterns) {
    std::optional<TermId> ids[3];
    bool missing = false;
    const PatternTerm* terms[3] = {&p.subject, &p.predicate, &p.object};
    for (int i = 0; i < 3; ++i) {
      if (const auto* t = std::get_if<Term>(terms[i])) {
        ids[i] = store.lookup(*t);
        missing |= !ids[i].has_value();
      }
    }
    cardinality.push_back(missing ? 0 : store.count(ids[0], ids[1], ids[2]));
  }

  for (std::size_t step = 0; step < patterns.size(); ++step) {
    std::size_t best = patterns.size();
    int bestBound = -1;
    for (std::size_t i = 0; i < patterns.size(); ++i) {
      if (used[i]) continue;
      int boundCount = 0;
      for (const auto* t : {&patterns[i].subject, &patterns[i].predicate,
                            &patterns[i].object}) {
        const auto* v = std::get_if<Variable>(t);
        boundCount += (!v || isBound(v->name)) ? 1 : 0;
      }
      if (boundCount > bestBound ||
          (boundCount == bestBound && cardinality[i] < cardinality[best])) {
        best = i;
        bestBound = boundCount;
      }
    }
    used[best] = true;
    order.push_back(best);
    for (const auto* t : {&patterns[best].subject, &patterns[best].predicate,
                          &patterns[best].object}) {
      if (const auto* v = std::get_if<Variable>(t)) {
        if (!isBound(v->name)) bound.push_back(v->name);
      }
    }
  }
  return order;
}

// _____________________________________________________________________________
ResultTable evaluate(const SelectQuery& query, const rdf::TripleStore& store) {
  return evaluate(query, store, joinOrder(query, store));
}

// _____________________________________________________________________________
ResultTable evaluate(const SelectQuery& query, const rdf::TripleStore& store,
                     const std::vector<std::size_t>& order) {
  return Evaluation(query, store, order).run();
}

// _____________________________________________________________________________
std::string toTsv(const ResultTable& table, const rdf::PrefixMap& prefixes) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i > 0) out += '\t';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += '\t';
      out += rdf::renderTerm(row[i], prefixes);
    }
    out += '\n';
  }
  return out;
}

}  // namespace gridkg::query
