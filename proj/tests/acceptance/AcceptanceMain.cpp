// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "gridkg/cli/App.h"
#include "gridkg/forecast/Forecast.h"
#include "gridkg/ontology/Validation.h"
#include "gridkg/query/Evaluator.h"
#include "gridkg/query/Virtual.h"
#include "gridkg/rdf/Turtle.h"
#include "gridkg/rdf/Vocab.h"
#include "util/ExampleAxioms.h"
#include "util/Fixture.h"
#include "util/LeastSquaresOracle.h"
#include "util/NaiveClosure.h"
#include "util/RandomGraphs.h"
#include "util/RandomQueries.h"

using namespace gridkg;
using namespace std::chrono_literals;
using rdf::Term;
using rdf::Triple;
namespace fs = std::filesystem;

namespace {

// Collects failed expectations of one criterion.
class Check {
 public:
  void expect(bool condition, const std::string& what) {
    ++total_;
    if (!condition && failures_.size() < 5) failures_.push_back(what);
    failed_ += condition ? 0 : 1;
  }
  void note(const std::string& text) { notes_.push_back(text); }

  bool passed() const { return failed_ == 0 && total_ > 0; }
  std::string summary() const {
    std::string out = std::to_string(total_ - failed_) + "/" + std::to_string(total_) + " checks";
    for (const auto& n : notes_) out += "; " + n;
    for (const auto& f : failures_) out += "; FAILED " + f;
    return out;
  }

 private:
  std::size_t total_ = 0;
  std::size_t failed_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

const testutil::ShippedFixture& fixture() { return testutil::ShippedFixture::get(); }

Term iri(std::string_view v) { return Term::iri(std::string(v)); }
Term artemis(std::string_view local) { return Term::iri(std::string(vocab::kArtemis) + std::string(local)); }
Term data(std::string_view local) { return Term::iri(std::string(vocab::kArtemisData) + std::string(local)); }

std::vector<std::vector<Term>> sorted(std::vector<std::vector<Term>> rows) {
  std::sort(rows.begin(), rows.end());
  return rows;
}

Timestamp at(const char* text) { return *parseTimestamp(text); }

const std::string kPlant = std::string(vocab::kArtemisData) + "plant/12_plant-a_belgrade";

// _____________________________________________________________________________
void ontologyFidelity(Check& c) {
  const auto& store = fixture().ontology.store;
  auto has = [&](const Term& s, std::string_view p, const Term& o) {
    return store.contains(Triple{s, iri(p), o});
  };
  const std::string seas(vocab::kSeas);
  c.expect(has(artemis("ElectricalGrid"), vocab::kRdfsSubClassOf, iri(seas + "ElectricPowerSystem")),
           "ElectricalGrid subClassOf seas:ElectricPowerSystem");
  c.expect(has(artemis("LongTermForecast"), vocab::kRdfsSubClassOf, iri(vocab::kSeasForecast)),
           "LongTermForecast subClassOf seas:Forecast");
  for (const auto& super : {std::string(vocab::kIds) + "DigitalContent",
                            std::string(vocab::kDcat) + "Dataset", std::string(vocab::kQb) + "DataSet"}) {
    c.expect(has(artemis("DataSet"), vocab::kRdfsSubClassOf, Term::iri(super)), "DataSet subClassOf " + super);
  }
  const Term capacity = artemis("hasCapacityActivePower");
  c.expect(has(capacity, vocab::kRdfsSubPropertyOf, iri(seas + "activePower")),
           "hasCapacityActivePower subPropertyOf seas:activePower");
  c.expect(has(capacity, vocab::kRdfsDomain, iri(seas + "FeatureOfInterest")),
           "hasCapacityActivePower domain seas:FeatureOfInterest");
  c.expect(has(capacity, vocab::kRdfsRange, iri(std::string(vocab::kCim) + "ActivePower")),
           "hasCapacityActivePower range cim:ActivePower");

  // Every triple of the five example snippets, with owl:subPropertyOf read as
  // rdfs:subPropertyOf. rdfs:isDefinedBy is module membership, an annotation;
  // mismatches there are listed, not counted.
  std::size_t exampleTriples = 0;
  for (const char* example : {testutil::kExample1, testutil::kExample2, testutil::kExample3,
                              testutil::kExample4, testutil::kExample5}) {
    auto doc = rdf::parseTurtle(std::string(testutil::kPrefixes) + example);
    for (auto t : doc.triples) {
      if (t.predicate.value() == vocab::kOwlSubPropertyOf) t.predicate = iri(vocab::kRdfsSubPropertyOf);
      const auto& prefixes = rdf::standardPrefixes();
      std::string text = rdf::renderTerm(t.subject, prefixes) + " " +
                         rdf::renderTerm(t.predicate, prefixes) + " " +
                         rdf::renderTerm(t.object, prefixes);
      if (t.predicate.value() == vocab::kRdfsIsDefinedBy) {
        if (!store.contains(t)) c.note("module differs: " + text);
        continue;
      }
      ++exampleTriples;
      c.expect(store.contains(t), text);
    }
  }
  c.note(std::to_string(exampleTriples) + " example axiom/annotation triples looked up");
}

// _____________________________________________________________________________
void closureOracle(Check& c) {
  auto matches = [](const std::vector<Triple>& base) {
    rdf::TripleStore store;
    store.insertAll(base);
    auto closure = ontology::computeClosure(store);
    auto got = closure.graph().triples();
    std::set<Triple> actual(got.begin(), got.end());
    auto expected = testutil::NaiveClosure::inferred(base);
    expected.insert(base.begin(), base.end());
    return actual == expected;
  };
  c.expect(matches(fixture().base.triples()), "ARTEMIS fixture");
  std::mt19937_64 rng(2021);
  std::uniform_int_distribution<std::size_t> sizes(0, 5000);
  std::size_t largest = 0;
  for (int i = 0; i < 50; ++i) {
    std::size_t size = i == 0 ? 5000 : sizes(rng);
    largest = std::max(largest, size);
    c.expect(matches(testutil::randomSchemaGraph(rng, size)), "random graph " + std::to_string(i));
  }
  c.note("fixture + 50 random graphs, largest " + std::to_string(largest) + " triples");
}

// _____________________________________________________________________________
void competencyCompleteness(Check& c) {
  const auto& f = fixture();
  auto results = query::checkCompetency(f.closure.graph(), f.catalog, {}, {});
  c.expect(results.size() == 5, "five questions");
  std::map<std::string, query::CompetencyResult> byId;
  for (auto& r : results) {
    c.expect(r.rowCount > 0, r.id + " nonempty");
    byId[r.id] = r;
  }
  const auto& cq1 = byId["CQ1"].rows.rows;
  c.expect(cq1.size() == 2, "CQ1 has 2 rows");
  c.expect(cq1.size() == 2 && cq1[0][0] == data("plant/12_plant-a_belgrade") &&
               cq1[1][0] == data("plant/15_zemun-solar_belgrade"),
           "CQ1 lists the two ElektroCo photovoltaic plants");
  const auto& cq2 = byId["CQ2"].rows.rows;
  c.expect(cq2.size() == 1 && cq2[0][1].value() == "2021-05-20T12:00:00Z",
           "CQ2 is the 12:00 Belgrade observation");
  const auto& cq3 = byId["CQ3"].rows.rows;
  c.expect(cq3.size() == 24 && cq3.front()[0] == data("forecast/12_plant-a_belgrade/2021-05-19t120000z"),
           "CQ3 is the 24-point run issued 2021-05-19T12:00Z");
  const auto& cq4 = byId["CQ4"].rows.rows;
  c.expect(cq4.size() == 24 && cq4.front()[1].value() == "2021-05-21T00:00:00Z",
           "CQ4 is the 24 hourly weather forecast points of 2021-05-21");
  const auto& cq5 = byId["CQ5"].rows.rows;
  c.expect(cq5.size() == 96, "CQ5 has 96 rows");
  c.expect(cq5.size() == 96 && cq5.front()[0].value() == "2021-05-20T00:00:00Z" &&
               cq5.back()[0].value() == "2021-05-20T23:45:00Z",
           "CQ5 spans 00:00 to 23:45");
  std::string counts;
  for (const auto& r : results) counts += (counts.empty() ? "" : " ") + r.id + "=" + std::to_string(r.rowCount);
  c.note(counts);
}

// _____________________________________________________________________________
void materializedVirtual(Check& c) {
  const auto& f = fixture();
  auto same = [&](const query::SelectQuery& q) {
    auto virt = query::evaluateVirtual(query::rewriteVirtual(q, f.rules), f.sources);
    auto mat = query::evaluate(q, f.data);
    return virt.columns == mat.columns && sorted(virt.rows) == sorted(mat.rows);
  };
  for (const auto& cq : f.catalog.questions()) {
    c.expect(same(query::parseQuery(query::instantiate(cq, {}, true))), cq.id);
  }
  std::mt19937_64 rng(20210520);
  for (int i = 0; i < 25; ++i) {
    auto text = testutil::randomQuery(rng, f.data);
    c.expect(same(query::parseQuery(text)), "random query " + std::to_string(i) + ":\n" + text);
  }
  c.note("5 CQs + 25 random queries");
}

// _____________________________________________________________________________
void roundTripIdempotence(Check& c) {
  std::mt19937_64 rng(20210520);
  for (int i = 0; i < 100; ++i) {
    auto graph = testutil::randomGraph(rng, 50);
    auto parsed = rdf::parseTurtle(rdf::serializeTurtle(graph, rdf::standardPrefixes())).triples;
    std::set<Triple> got;
    for (const auto& t : parsed) got.insert(testutil::stripBlankScope(t));
    c.expect(got == std::set<Triple>(graph.begin(), graph.end()), "round trip " + std::to_string(i));
  }

  const auto& f = fixture();
  rdf::TripleStore store;
  auto first = mapping::materialize(f.rules, f.sources, store);
  auto second = mapping::materialize(f.rules, f.sources, store);
  c.expect(first.storeGrowth() == 961, "first materialization adds 961 triples");
  c.expect(second.storeGrowth() == 0, "second materialization adds nothing");

  auto dir = fs::temp_directory_path() / "gridkg-acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto build = [&](const std::string& name) {
    std::ostringstream out, err;
    auto d = testutil::dataDir();
    int code = cli::run({"--ontology-dir", (d / "ontology").string(), "--mappings",
                         (d / "mappings" / "artemis-mappings.json").string(), "--sources-dir",
                         (d / "sources").string(), "--snapshot", (dir / name).string(), "build"},
                        out, err);
    return code == 0 ? testutil::readFile(dir / name) : std::string{};
  };
  auto a = build("a.ttl");
  auto b = build("b.ttl");
  c.expect(!a.empty() && a == b, "build snapshot byte-identical across reruns");
  fs::remove_all(dir);
  c.note("100 graphs, second run growth " + std::to_string(second.storeGrowth()) + ", snapshot " +
         std::to_string(a.size()) + " bytes");
}

// _____________________________________________________________________________
void curationAccounting(Check& c) {
  auto dir = testutil::fixtureDir() / "curation";
  auto sources = connectors::loadSourceCatalog(dir / "sources.json");
  auto rules = mapping::loadMappings(dir / "mappings.json", sources);
  rdf::TripleStore store;
  auto report = mapping::materialize(rules, sources, store);
  // Hand count: null power and null status drop one assertion each, null ts
  // hits the subject key; the two duplicate rows repeat 5 triples each.
  c.expect(report.rowsRead == 10, "10 rows read");
  c.expect(report.droppedAssertions + report.rowsSkipped == 3, "3 nulls accounted");
  c.expect(report.droppedAssertions == 2 && report.rowsSkipped == 1, "2 dropped + 1 skipped");
  c.expect(report.duplicatesSuppressed == 10, "10 duplicate triples suppressed");
  c.expect(store.size() == report.storeGrowth(), "store growth matches");
  c.note("dropped " + std::to_string(report.droppedAssertions) + ", skipped " +
         std::to_string(report.rowsSkipped) + ", duplicates " +
         std::to_string(report.duplicatesSuppressed));
}

// _____________________________________________________________________________
void forecastCorrectness(Check& c) {
  using namespace forecast;
  auto series = [](const std::vector<double>& values, Seconds cadence) {
    std::vector<SeriesPoint> points;
    for (std::size_t i = 0; i < values.size(); ++i) {
      points.push_back({at("2021-05-20T00:00:00Z") + cadence * static_cast<long>(i), values[i],
                        Status::Online});
    }
    return makeSeries(kPlant, points);
  };
  auto ramp = forecastVeryShortTerm(series({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, 900s), 30min, 15min, 1);
  c.expect(ramp.points.size() == 2 && std::abs(ramp.points[0].kw - 11) < 1e-9 &&
               std::abs(ramp.points[1].kw - 12) < 1e-9,
           "AR(1) on 1..10 predicts 11, 12");

  // Training pairs wind 4->2, 8->4, 10->5 repeated over 24 hours.
  std::vector<double> wind, power;
  for (int i = 0; i < 24; ++i) {
    wind.push_back(std::vector<double>{4, 8, 10}[i % 3]);
    power.push_back(std::vector<double>{2, 4, 5}[i % 3]);
  }
  WeatherSeries observed, ahead;
  for (int i = 0; i < 24; ++i) observed.push_back({at("2021-05-20T00:00:00Z") + 1h * i, 0, wind[i], 0});
  ahead.push_back({at("2021-05-21T00:00:00Z"), 0, 6.0, 0});
  auto dayAhead = forecastDayAhead(series(power, 3600s), observed, ahead, {});
  c.expect(dayAhead.points.size() == 1 && std::abs(dayAhead.points[0].kw - 3.0) < 1e-9,
           "collinear day-ahead predicts 3.0 kW at wind 6");

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<> value(0.0, 100.0);
  double worst = 0.0;
  for (int round = 0; round < 20; ++round) {
    std::size_t p = 1 + round % 4;
    std::vector<double> values;
    for (int i = 0; i < 60; ++i) values.push_back(value(rng));
    std::vector<std::vector<double>> x;
    std::vector<double> y;
    for (std::size_t i = p; i < values.size(); ++i) {
      std::vector<double> row{1.0};
      for (std::size_t k = 1; k <= p; ++k) row.push_back(values[i - k]);
      x.push_back(row);
      y.push_back(values[i]);
    }
    auto expected = testutil::normalEquationsOracle(x, y);
    auto model = fitAr(series(values, 900s), p);
    double diff = std::abs(model.intercept - expected[0]);
    for (std::size_t k = 0; k < p; ++k) diff = std::max(diff, std::abs(model.lags[k] - expected[k + 1]));
    worst = std::max(worst, diff);
    c.expect(diff < 1e-9, "OLS oracle series " + std::to_string(round));
  }
  bool rejected = false;
  try {
    forecastVeryShortTerm(series({1, 2, 3, 4, 5}, 900s), 3h, 15min);
  } catch (const HorizonTooLongError&) {
    rejected = true;
  }
  c.expect(rejected, "3 h horizon rejected");
  std::ostringstream worstText;
  worstText << "max oracle deviation " << worst;
  c.note(worstText.str());
}

// _____________________________________________________________________________
void writeBackLoop(Check& c) {
  const auto& f = fixture();
  auto history = forecast::extractSeries(f.data, kPlant, at("2021-05-20T06:00:00Z"),
                                         at("2021-05-20T12:00:00Z"));
  auto result = forecast::forecastVeryShortTerm(history, 2h, 15min);
  rdf::TripleStore store;
  store.insertAll(f.base.triples());
  auto added = forecast::writeForecast(store, result);
  auto again = forecast::writeForecast(store, result);
  c.expect(added == 3 + 3 * result.points.size(), "first write adds 3 + 3n triples");
  c.expect(again == 0, "re-write adds zero triples");

  auto closure = ontology::computeClosure(store);
  const Term node = Term::iri(forecast::forecastIri(result));
  auto all = query::evaluate(query::parseQuery("SELECT ?f WHERE { ?f a seas:Forecast }"), closure.graph());
  c.expect(std::count(all.rows.begin(), all.rows.end(), std::vector<Term>{node}) == 1,
           "{?f a seas:Forecast} finds the new forecast");
  query::CqParams params{{"from", formatTimestamp(result.points.front().ts)},
                         {"to", formatTimestamp(result.points.back().ts + 1s)}};
  auto cq3 = query::checkCompetency(closure.graph(), f.catalog, {"CQ3"}, params).front();
  auto mine = std::count_if(cq3.rows.rows.begin(), cq3.rows.rows.end(),
                            [&](const auto& row) { return row[0] == node; });
  c.expect(static_cast<std::size_t>(mine) == result.points.size(), "CQ3 returns every written point");
  c.note("added " + std::to_string(added) + ", re-write " + std::to_string(again) + ", CQ3 rows " +
         std::to_string(mine));
}

// _____________________________________________________________________________
void validationMetrics(Check& c) {
  std::vector<ontology::OntologyDocument> docs;
  for (const auto& entry : fs::directory_iterator(testutil::dataDir() / "ontology")) {
    if (entry.path().extension() == ".ttl") {
      docs.push_back({entry.path().filename().string(), testutil::readFile(entry.path())});
    }
  }
  std::sort(docs.begin(), docs.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  auto shipped = ontology::loadModules(docs);
  auto before = ontology::validate(shipped.store, shipped.modules);
  c.expect(before.clarity == 1.0, "clarity 1.0 on the shipped fixture");

  auto plant = std::find_if(docs.begin(), docs.end(),
                            [](const auto& d) { return d.name == "artemis-plant.ttl"; });
  plant->text += "\nartemis:UndocumentedTerm a owl:Class ; rdfs:label \"Undocumented\"@en ;"
                 " rdfs:isDefinedBy artemis:PlantOntology .\n";
  auto injected = ontology::loadModules(docs);
  auto after = ontology::validate(injected.store, injected.modules);
  double drop = before.clarity - after.clarity;
  c.expect(after.termCount == before.termCount + 1, "one more term");
  c.expect(std::abs(drop - 1.0 / static_cast<double>(after.termCount)) < 1e-12,
           "clarity drops by exactly 1/#terms");

  auto cyclic = ontology::loadModules(
      {{"cycle.ttl", std::string(testutil::kPrefixes) +
                         "artemis:A a owl:Class ; rdfs:subClassOf artemis:B .\n"
                         "artemis:B a owl:Class ; rdfs:subClassOf artemis:A .\n"}});
  auto report = ontology::validate(cyclic.store, cyclic.modules);
  bool cycle = std::any_of(report.coherence.begin(), report.coherence.end(), [](const auto& f) {
    return f.kind == ontology::FindingKind::SubClassCycle && f.terms.size() == 2;
  });
  c.expect(cycle, "A subClassOf B subClassOf A reported");
  std::ostringstream text;
  text << "clarity " << before.clarity << " -> " << after.clarity << " over " << after.termCount
       << " terms";
  c.note(text.str());
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"ontology fidelity", ontologyFidelity},
      {"closure oracle equivalence", closureOracle},
      {"competency completeness", competencyCompleteness},
      {"materialized = virtual", materializedVirtual},
      {"round trip and idempotence", roundTripIdempotence},
      {"curation accounting", curationAccounting},
      {"forecast correctness", forecastCorrectness},
      {"write-back loop", writeBackLoop},
      {"validation metrics", validationMetrics},
  };
  const auto start = std::chrono::steady_clock::now();
  std::size_t passed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check check;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
    passed += check.passed();
    std::cout << (check.passed() ? "[PASS] " : "[FAIL] ") << i + 1 << ". " << criteria[i].first
              << " (" << ms.count() << " ms): " << check.summary() << std::endl;
  }
  auto total = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  std::cout << passed << "/" << criteria.size() << " criteria passed in " << total.count() << " ms"
            << std::endl;
  return passed == criteria.size() ? 0 : 1;
}
