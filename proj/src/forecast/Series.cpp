#include "gridkg/forecast/Series.h"

#include <algorithm>

#include "gridkg/query/Evaluator.h"
#include "gridkg/rdf/Turtle.h"
#include "gridkg/rdf/Vocab.h"
#include "gridkg/util/Numbers.h"

namespace gridkg::forecast {

using rdf::Term;

namespace {

std::string iri(const std::string& value) { return "<" + value + ">"; }

std::string dateTime(Timestamp ts) {
  return rdf::renderTerm(Term::literal(formatTimestamp(ts), std::string(vocab::kXsdDateTime)),
                         rdf::PrefixMap{});
}

std::string artemis(std::string_view local) { return iri(std::string(vocab::kArtemis) + std::string(local)); }

double numberOf(const Term& t) { return parseDouble(t.value()).value_or(0.0); }

}  // namespace

// _____________________________________________________________________________
std::string_view toString(Status status) {
  return status == Status::Online ? "ONLINE" : "OUTAGE";
}

// _____________________________________________________________________________
TimeSeries makeSeries(std::string plant, std::vector<SeriesPoint> points) {
  std::stable_sort(points.begin(), points.end(),
                   [](const SeriesPoint& a, const SeriesPoint& b) { return a.ts < b.ts; });
  points.erase(std::unique(points.begin(), points.end(),
                           [](const SeriesPoint& a, const SeriesPoint& b) { return a.ts == b.ts; }),
               points.end());
  TimeSeries series{std::move(plant), std::move(points), Seconds{0}};
  for (std::size_t i = 1; i < series.points.size(); ++i) {
    auto gap = series.points[i].ts - series.points[i - 1].ts;
    if (series.cadence == Seconds{0} || gap < series.cadence) series.cadence = gap;
  }
  return series;
}

// _____________________________________________________________________________
Seconds cadenceOf(const WeatherSeries& series) {
  Seconds cadence{0};
  for (std::size_t i = 1; i < series.size(); ++i) {
    auto gap = series[i].ts - series[i - 1].ts;
    if (gap > Seconds{0} && (cadence == Seconds{0} || gap < cadence)) cadence = gap;
  }
  return cadence;
}

// _____________________________________________________________________________
TimeSeries extractSeries(const rdf::TripleStore& store, const std::string& plant, Timestamp from,
                         Timestamp to) {
  if (store.match(Term::iri(plant), std::nullopt, std::nullopt).empty()) {
    throw UnknownPlantError(plant);
  }
  auto q = query::parseQuery(
      "SELECT ?obs ?ts ?kw WHERE {\n"
      "  ?obs " + artemis("observedPlant") + " " + iri(plant) + " .\n"
      "  ?obs " + artemis("observedAt") + " ?ts .\n"
      "  ?obs " + artemis("producedActivePower") + " ?kw .\n"
      "  FILTER(?ts >= " + dateTime(from) + ")\n"
      "  FILTER(?ts < " + dateTime(to) + ")\n"
      "}");
  const Term statusPredicate = Term::iri(std::string(vocab::kArtemis) + "operatingStatus");
  std::vector<SeriesPoint> points;
  for (const auto& row : query::evaluate(q, store).rows) {
    auto ts = parseTimestamp(row[1].value());
    if (!ts) continue;
    SeriesPoint p{*ts, numberOf(row[2]), Status::Online};
    for (const auto& t : store.match(row[0], statusPredicate, std::nullopt)) {
      if (t.object.value() == "OUTAGE") p.status = Status::Outage;
    }
    points.push_back(p);
  }
  return makeSeries(plant, std::move(points));
}

// _____________________________________________________________________________
WeatherSeries extractWeather(const rdf::TripleStore& store, const std::string& classIri,
                             const std::string& city, Timestamp from, Timestamp to) {
  auto q = query::parseQuery(
      "SELECT ?ts ?temp ?wind ?ghi WHERE {\n"
      "  ?w a " + iri(classIri) + " ;\n"
      "     " + artemis("city") + " " + rdf::renderTerm(Term::literal(city), rdf::PrefixMap{}) + " ;\n"
      "     " + artemis("observedAt") + " ?ts ;\n"
      "     " + artemis("temperature") + " ?temp ;\n"
      "     " + artemis("windSpeed") + " ?wind ;\n"
      "     " + artemis("irradiance") + " ?ghi .\n"
      "  FILTER(?ts >= " + dateTime(from) + ")\n"
      "  FILTER(?ts < " + dateTime(to) + ")\n"
      "} ORDER BY ?ts");
  WeatherSeries out;
  for (const auto& row : query::evaluate(q, store).rows) {
    auto ts = parseTimestamp(row[0].value());
    if (!ts || (!out.empty() && out.back().ts == *ts)) continue;
    out.push_back({*ts, numberOf(row[1]), numberOf(row[2]), numberOf(row[3])});
  }
  return out;
}

// _____________________________________________________________________________
std::optional<std::string> plantAttribute(const rdf::TripleStore& store, const std::string& plant,
                                          std::string_view property) {
  auto matches = store.match(Term::iri(plant),
                             Term::iri(std::string(vocab::kArtemis) + std::string(property)),
                             std::nullopt);
  for (const auto& t : matches) {
    if (t.object.isLiteral()) return t.object.value();
  }
  return std::nullopt;
}

}  // namespace gridkg::forecast
