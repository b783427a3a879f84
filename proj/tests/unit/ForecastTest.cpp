#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "gridkg/forecast/Forecast.h"
#include "gridkg/ontology/Closure.h"
#include "gridkg/query/Competency.h"
#include "gridkg/query/Evaluator.h"
#include "gridkg/rdf/Vocab.h"
#include "util/Fixture.h"
#include "util/LeastSquaresOracle.h"

using namespace gridkg;
using namespace gridkg::forecast;
using namespace std::chrono_literals;

namespace {

const std::string kPlant = std::string(vocab::kArtemisData) + "plant/12_plant-a_belgrade";

Timestamp at(const char* text) { return *parseTimestamp(text); }

TimeSeries seriesOf(const std::vector<double>& values, Seconds cadence = 900s,
                    Timestamp start = at("2021-05-20T00:00:00Z")) {
  std::vector<SeriesPoint> points;
  for (std::size_t i = 0; i < values.size(); ++i) {
    points.push_back({start + cadence * static_cast<long>(i), values[i], Status::Online});
  }
  return makeSeries(kPlant, std::move(points));
}

WeatherSeries windSeries(const std::vector<double>& wind, Timestamp start, Seconds cadence = 3600s) {
  WeatherSeries out;
  for (std::size_t i = 0; i < wind.size(); ++i) {
    out.push_back({start + cadence * static_cast<long>(i), 20.0, wind[i], 0.0});
  }
  return out;
}

}  // namespace

// _____________________________________________________________________________
TEST(ForecastTest, ArOneOnRamp) {
  auto series = seriesOf({1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  auto model = fitAr(series, 1);
  EXPECT_NEAR(model.intercept, 1.0, 1e-9);
  ASSERT_EQ(model.lags.size(), 1u);
  EXPECT_NEAR(model.lags[0], 1.0, 1e-9);
  EXPECT_EQ(model.trainingSize, 9u);
  EXPECT_NEAR(model.residualNorm, 0.0, 1e-9);

  auto result = forecastVeryShortTerm(series, 30min, 15min, 1);
  ASSERT_EQ(result.points.size(), 2u);
  EXPECT_NEAR(result.points[0].kw, 11.0, 1e-9);
  EXPECT_NEAR(result.points[1].kw, 12.0, 1e-9);
  EXPECT_EQ(result.points[0].ts, at("2021-05-20T02:30:00Z"));
  EXPECT_EQ(result.points[0].method, "ar(1)");
  EXPECT_EQ(result.issued, at("2021-05-20T02:15:00Z"));
}

// _____________________________________________________________________________
TEST(ForecastTest, ConstantSeries) {
  auto series = seriesOf(std::vector<double>(20, 500.0));
  auto result = forecastVeryShortTerm(series, 2h, 15min);
  ASSERT_EQ(result.points.size(), 8u);
  for (const auto& p : result.points) EXPECT_NEAR(p.kw, 500.0, 1e-6);
  auto one = fitAr(series, 1);
  EXPECT_NEAR(one.predictNext({500.0}), 500.0, 1e-6);
}

// _____________________________________________________________________________
TEST(ForecastTest, RecoversArTwoCoefficients) {
  const double c = 3.0, a1 = 0.6, a2 = -0.3;
  std::vector<double> values{5.0, 1.0};
  while (values.size() < 40) {
    values.push_back(c + a1 * values[values.size() - 1] + a2 * values[values.size() - 2]);
  }
  auto model = fitAr(seriesOf(values), 2);
  EXPECT_NEAR(model.intercept, c, 1e-6);
  EXPECT_NEAR(model.lags[0], a1, 1e-6);
  EXPECT_NEAR(model.lags[1], a2, 1e-6);
}

// _____________________________________________________________________________
TEST(ForecastTest, ArMatchesNormalEquationsOracle) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<> value(0.0, 100.0);
  std::uniform_int_distribution<std::size_t> order(1, 4);
  std::uniform_int_distribution<std::size_t> length(30, 80);
  std::bernoulli_distribution outage(0.1);
  std::bernoulli_distribution gap(0.05);
  for (int round = 0; round < 20; ++round) {
    std::size_t p = order(rng);
    std::vector<SeriesPoint> points;
    Timestamp ts = at("2021-05-20T00:00:00Z");
    for (std::size_t i = 0, n = length(rng); i < n; ++i) {
      ts += gap(rng) ? 1800s : 900s;
      points.push_back({ts, value(rng), outage(rng) ? Status::Outage : Status::Online});
    }
    auto series = makeSeries(kPlant, points);
    ASSERT_EQ(series.cadence, 900s);

    // Windows of p+1 ONLINE points 15 minutes apart.
    std::vector<std::vector<double>> x;
    std::vector<double> y;
    for (std::size_t i = p; i < points.size(); ++i) {
      bool ok = true;
      for (std::size_t k = 0; k <= p; ++k) {
        ok = ok && points[i - k].status == Status::Online;
        if (k < p) ok = ok && points[i - k].ts - points[i - k - 1].ts == 900s;
      }
      if (!ok) continue;
      std::vector<double> row{1.0};
      for (std::size_t k = 1; k <= p; ++k) row.push_back(points[i - k].value);
      x.push_back(row);
      y.push_back(points[i].value);
    }
    ASSERT_GT(x.size(), p + 1);
    auto expected = testutil::normalEquationsOracle(x, y);
    auto model = fitAr(series, p);
    EXPECT_EQ(model.trainingSize, x.size());
    EXPECT_NEAR(model.intercept, expected[0], 1e-9) << "round " << round;
    for (std::size_t k = 0; k < p; ++k) {
      EXPECT_NEAR(model.lags[k], expected[k + 1], 1e-9) << "round " << round;
    }
  }
}

// _____________________________________________________________________________
TEST(ForecastTest, HorizonLaw) {
  auto series = seriesOf({1, 2, 3, 4, 5, 6});
  EXPECT_THROW(forecastVeryShortTerm(series, 3h, 15min), HorizonTooLongError);
  EXPECT_THROW(forecastVeryShortTerm(series, 2h + 15min, 15min), HorizonTooLongError);
  EXPECT_EQ(forecastVeryShortTerm(series, 2h, 15min).points.size(), 8u);
  EXPECT_EQ(forecastVeryShortTerm(series, 2h, 1h).points.size(), 2u);
  EXPECT_THROW(forecastVeryShortTerm(series, 1h, 25min), InvalidRequestError);
  EXPECT_THROW(forecastVeryShortTerm(series, 30min, 10min), InvalidRequestError);
  EXPECT_THROW(forecastVeryShortTerm(TimeSeries{kPlant, {}, 0s}, 1h, 15min), EmptySeriesError);
}

// _____________________________________________________________________________
TEST(ForecastTest, StepCoarserThanCadence) {
  auto series = seriesOf({1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  auto result = forecastVeryShortTerm(series, 1h, 30min, 1);
  ASSERT_EQ(result.points.size(), 2u);
  EXPECT_NEAR(result.points[0].kw, 12.0, 1e-9);
  EXPECT_NEAR(result.points[1].kw, 14.0, 1e-9);
}

// _____________________________________________________________________________
TEST(ForecastTest, PersistenceFallback) {
  auto series = seriesOf({3.0, 7.0, 4.5});
  auto result = forecastVeryShortTerm(series, 1h, 15min, 4);
  ASSERT_EQ(result.points.size(), 4u);
  for (const auto& p : result.points) {
    EXPECT_EQ(p.kw, 4.5);
    EXPECT_EQ(p.method, "persistence");
  }
  EXPECT_THROW(fitAr(series, 4), InsufficientHistoryError);
  // Enough points, but outages leave no complete window.
  auto broken = seriesOf({1, 2, 3, 4, 5});
  broken.points[2].status = Status::Outage;
  EXPECT_THROW(fitAr(broken, 2), InsufficientHistoryError);
  EXPECT_EQ(forecastVeryShortTerm(broken, 30min, 15min, 2).points[0].method, "persistence");
}

// _____________________________________________________________________________
TEST(ForecastTest, NonNegativity) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<> noise(-5.0, 5.0);
  for (int round = 0; round < 20; ++round) {
    std::vector<double> values;
    for (int i = 0; i < 30; ++i) values.push_back(std::max(0.0, 200.0 - 8.0 * i + noise(rng)));
    auto result = forecastVeryShortTerm(seriesOf(values), 2h, 15min, 1 + round % 4);
    for (const auto& p : result.points) EXPECT_GE(p.kw, 0.0);
  }
}

// _____________________________________________________________________________
TEST(ForecastTest, DayAheadCollinear) {
  auto start = at("2021-05-20T00:00:00Z");
  auto history = seriesOf({2, 4, 5}, 3600s, start);
  auto observed = windSeries({4, 8, 10}, start);
  auto forecast = windSeries({6}, at("2021-05-21T00:00:00Z"));
  auto result = forecastDayAhead(history, observed, forecast, {Driver::WindSpeed, 3, {}});
  ASSERT_EQ(result.points.size(), 1u);
  EXPECT_NEAR(result.points[0].kw, 3.0, 1e-9);
  EXPECT_NEAR(result.coefficients[0], 0.0, 1e-9);
  EXPECT_NEAR(result.coefficients[1], 0.5, 1e-9);
  EXPECT_EQ(result.points[0].method, "linear(wind)");
  EXPECT_THROW(forecastDayAhead(history, observed, forecast, {}), InsufficientHistoryError);
  EXPECT_THROW(forecastDayAhead(history, observed, {}, {Driver::WindSpeed, 3, {}}),
               EmptyWeatherError);
}

// _____________________________________________________________________________
TEST(ForecastTest, DayAheadOutageMasking) {
  auto start = at("2021-05-20T00:00:00Z");
  std::vector<double> wind, power;
  for (int i = 0; i < 24; ++i) {
    wind.push_back(2.0 + i % 7);
    power.push_back(1.0 + 0.5 * wind.back());
  }
  auto history = seriesOf(power, 3600s, start);
  auto observed = windSeries(wind, start);
  auto forecast = windSeries(std::vector<double>(24, 6.0), at("2021-05-21T00:00:00Z"));
  DayAheadOptions options;
  options.outages = {{at("2021-05-21T10:00:00Z"), at("2021-05-21T12:00:00Z")}};
  auto result = forecastDayAhead(history, observed, forecast, options);
  ASSERT_EQ(result.points.size(), 24u);
  EXPECT_EQ(result.request.step, 3600s);
  EXPECT_EQ(result.request.horizon, 24h);
  for (const auto& p : result.points) {
    if (options.outages[0].contains(p.ts)) {
      EXPECT_EQ(p.kw, 0.0);
      EXPECT_EQ(p.method, "outage");
    } else {
      EXPECT_NEAR(p.kw, 4.0, 1e-9);
    }
  }
}

// _____________________________________________________________________________
TEST(ForecastTest, DayAheadMatchesOracleOnFixture) {
  const auto& f = testutil::ShippedFixture::get();
  auto from = at("2021-05-20T00:00:00Z");
  auto to = at("2021-05-21T00:00:00Z");
  auto history = extractSeries(f.data, kPlant, from, to);
  const std::string city = "Belgrade";
  auto observed = extractWeather(f.data, std::string(vocab::kArtemis) + "WeatherObservation",
                                 city, from, to);
  auto forecast = extractWeather(f.data, std::string(vocab::kArtemis) + "WeatherForecast", city,
                                 to, to + 24h);
  ASSERT_EQ(observed.size(), 24u);
  ASSERT_EQ(forecast.size(), 24u);
  auto eic = plantAttribute(f.data, kPlant, "eicFunction");
  ASSERT_TRUE(eic.has_value());
  DayAheadOptions options;
  options.driver = driverFor(*eic);
  EXPECT_EQ(options.driver, Driver::Irradiance);
  auto result = forecastDayAhead(history, observed, forecast, options);

  // Pairs: ONLINE points, nearest hourly observation within 30 minutes. Of
  // the 96 points, 8 are OUTAGE and 23:45 is 45 minutes from 23:00.
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  for (const auto& p : history.points) {
    if (p.status != Status::Online) continue;
    const WeatherPoint* best = nullptr;
    for (const auto& w : observed) {
      auto d = std::chrono::abs(w.ts - p.ts);
      if (d <= 30min && (!best || d < std::chrono::abs(best->ts - p.ts))) best = &w;
    }
    if (!best) continue;
    x.push_back({1.0, best->irradiance});
    y.push_back(p.value);
  }
  EXPECT_EQ(x.size(), 87u);
  EXPECT_EQ(result.trainingSize, x.size());
  auto expected = testutil::normalEquationsOracle(x, y);
  EXPECT_NEAR(result.coefficients[0], expected[0], 1e-9);
  EXPECT_NEAR(result.coefficients[1], expected[1], 1e-9);
  for (const auto& p : result.points) EXPECT_GE(p.kw, 0.0);
}

// _____________________________________________________________________________
TEST(ForecastTest, ExtractSeries) {
  const auto& f = testutil::ShippedFixture::get();
  auto day = extractSeries(f.data, kPlant, at("2021-05-20T00:00:00Z"), at("2021-05-21T00:00:00Z"));
  ASSERT_EQ(day.points.size(), 96u);
  EXPECT_EQ(day.cadence, 900s);
  std::size_t outages = 0;
  for (const auto& p : day.points) {
    bool inBlock = at("2021-05-20T13:00:00Z") <= p.ts && p.ts < at("2021-05-20T15:00:00Z");
    EXPECT_EQ(p.status == Status::Outage, inBlock) << formatTimestamp(p.ts);
    outages += p.status == Status::Outage;
  }
  EXPECT_EQ(outages, 8u);
  auto empty = extractSeries(f.data, kPlant, at("2021-05-20T10:00:00Z"), at("2021-05-20T10:00:00Z"));
  EXPECT_TRUE(empty.empty());
  EXPECT_THROW(extractSeries(f.data, kPlant + "x", at("2021-05-20T00:00:00Z"),
                             at("2021-05-21T00:00:00Z")),
               UnknownPlantError);
}

// _____________________________________________________________________________
TEST(ForecastTest, WriteBackLoop) {
  const auto& f = testutil::ShippedFixture::get();
  auto history = extractSeries(f.data, kPlant, at("2021-05-20T06:00:00Z"), at("2021-05-20T12:00:00Z"));
  auto result = forecastVeryShortTerm(history, 2h, 15min);
  ASSERT_EQ(result.points.size(), 8u);

  rdf::TripleStore store;
  store.insertAll(f.base.triples());
  EXPECT_EQ(forecastTriples(result).size(), 3u + 3u * 8u);
  EXPECT_EQ(writeForecast(store, result), 27u);
  EXPECT_EQ(writeForecast(store, result), 0u);

  auto closure = ontology::computeClosure(store);
  auto forecasts = query::evaluate(query::parseQuery("SELECT ?f WHERE { ?f a seas:Forecast }"),
                                   closure.graph());
  const rdf::Term node = rdf::Term::iri(forecastIri(result));
  EXPECT_EQ(std::count(forecasts.rows.begin(), forecasts.rows.end(), std::vector{node}), 1);

  query::CqParams params{{"from", formatTimestamp(result.points.front().ts)},
                         {"to", formatTimestamp(result.points.back().ts + 1s)}};
  auto cq3 = query::checkCompetency(closure.graph(), f.catalog, {"CQ3"}, params).front();
  std::size_t mine = 0;
  for (const auto& row : cq3.rows.rows) mine += row[0] == node;
  EXPECT_EQ(mine, 8u);
}

// _____________________________________________________________________________
TEST(ForecastTest, Exports) {
  auto result = forecastVeryShortTerm(seriesOf({1, 2, 3, 4}), 30min, 15min, 1);
  EXPECT_EQ(toTsv(result),
            "ts\tkw\tmethod\n2021-05-20T01:00:00Z\t5.0\tar(1)\n2021-05-20T01:15:00Z\t6.0\tar(1)\n");
  EXPECT_EQ(forecastIri(result),
            std::string(vocab::kArtemisData) + "forecast/12_plant-a_belgrade/2021-05-20t004500z");
  ForecastResult empty;
  EXPECT_THROW(forecastTriples(empty), InvalidRequestError);
}

// _____________________________________________________________________________
TEST(ForecastTest, OutageSchedule) {
  auto schedule = parseOutageSchedule(
      R"([{"start": "2021-05-21T10:00:00Z", "end": "2021-05-21T12:00:00Z"}])");
  ASSERT_EQ(schedule.size(), 1u);
  EXPECT_TRUE(schedule[0].contains(at("2021-05-21T10:00:00Z")));
  EXPECT_FALSE(schedule[0].contains(at("2021-05-21T12:00:00Z")));
  EXPECT_TRUE(parseOutageSchedule("[]").empty());
  EXPECT_THROW(parseOutageSchedule("{}"), ScheduleFormatError);
  EXPECT_THROW(parseOutageSchedule("[{\"start\": \"x\", \"end\": \"y\"}]"), ScheduleFormatError);
  EXPECT_THROW(parseOutageSchedule(
                   R"([{"start": "2021-05-21T12:00:00Z", "end": "2021-05-21T10:00:00Z"}])"),
               ScheduleFormatError);
  EXPECT_THROW(parseOutageSchedule("[{"), ScheduleFormatError);
}
