#include "gridkg/forecast/Forecast.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include "json.hpp"

#include "gridkg/connectors/Source.h"
#include "gridkg/rdf/Vocab.h"
#include "gridkg/util/Numbers.h"

namespace gridkg::forecast {

using rdf::Term;
using rdf::Triple;

namespace {

double residualNorm(const std::vector<std::vector<double>>& rows, const std::vector<double>& targets,
                    const std::vector<double>& beta) {
  double sum = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double fitted = 0.0;
    for (std::size_t j = 0; j < beta.size(); ++j) fitted += rows[i][j] * beta[j];
    sum += (targets[i] - fitted) * (targets[i] - fitted);
  }
  return std::sqrt(sum);
}

Term artemis(std::string_view local) {
  return Term::iri(std::string(vocab::kArtemis) + std::string(local));
}

Term dateTimeLiteral(Timestamp ts) {
  return Term::literal(formatTimestamp(ts), std::string(vocab::kXsdDateTime));
}

std::string plantUid(const std::string& plant) {
  const std::string marker = std::string(vocab::kArtemisData) + "plant/";
  if (plant.starts_with(marker) && plant.size() > marker.size()) return plant.substr(marker.size());
  return connectors::slug(plant);
}

std::string timestampSlug(Timestamp ts) { return connectors::slugValue(connectors::Value{ts}); }

// Exported kW values are rounded to the microwatt.
std::string formatKw(double kw) { return formatDecimal(std::round(kw * 1e9) / 1e9); }

double driverValue(const WeatherPoint& w, Driver driver) {
  return driver == Driver::Irradiance ? w.irradiance : w.windSpeed;
}

// Nearest observation to `ts` within `tolerance`; ties go to the earlier one.
const WeatherPoint* nearest(const WeatherSeries& sorted, Timestamp ts, Seconds tolerance) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), ts,
                             [](const WeatherPoint& w, Timestamp t) { return w.ts < t; });
  const WeatherPoint* best = nullptr;
  if (it != sorted.end()) best = &*it;
  if (it != sorted.begin()) {
    const auto* before = &*std::prev(it);
    if (!best || ts - before->ts <= best->ts - ts) best = before;
  }
  if (!best) return nullptr;
  auto distance = best->ts > ts ? best->ts - ts : ts - best->ts;
  return distance <= tolerance ? best : nullptr;
}

}  // namespace

// _____________________________________________________________________________
double ARModel::predictNext(const std::vector<double>& history) const {
  double value = intercept;
  for (std::size_t i = 0; i < lags.size(); ++i) value += lags[i] * history[history.size() - 1 - i];
  return value;
}

// _____________________________________________________________________________
std::vector<double> solveNormalEquations(const std::vector<std::vector<double>>& rows,
                                         const std::vector<double>& targets) {
  if (rows.empty()) return {};
  const auto n = static_cast<Eigen::Index>(rows.front().size());
  Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()), n);
  Eigen::VectorXd y(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (Eigen::Index j = 0; j < n; ++j) x(static_cast<Eigen::Index>(i), j) = rows[i][j];
    y(static_cast<Eigen::Index>(i)) = targets[i];
  }
  Eigen::MatrixXd gram = x.transpose() * x;
  Eigen::VectorXd moment = x.transpose() * y;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(gram);
  // Numerically singular systems (constant series) take the minimum-norm branch.
  cod.setThreshold(1e-12);
  Eigen::VectorXd beta = cod.solve(moment);
  return {beta.data(), beta.data() + beta.size()};
}

// _____________________________________________________________________________
ARModel fitAr(const TimeSeries& series, std::size_t p) {
  if (p == 0) throw InvalidRequestError("AR order must be at least 1");
  const auto& points = series.points;
  auto online = std::count_if(points.begin(), points.end(),
                              [](const SeriesPoint& s) { return s.status == Status::Online; });
  if (static_cast<std::size_t>(online) < p + 1) {
    throw InsufficientHistoryError("AR(" + std::to_string(p) + ") needs " +
                                   std::to_string(p + 1) + " ONLINE points, got " +
                                   std::to_string(online));
  }
  std::vector<std::vector<double>> rows;
  std::vector<double> targets;
  for (std::size_t i = p; i < points.size(); ++i) {
    bool usable = true;
    for (std::size_t k = 0; k <= p && usable; ++k) {
      usable = points[i - k].status == Status::Online &&
               (k == p || points[i - k].ts - points[i - k - 1].ts == series.cadence);
    }
    if (!usable) continue;
    std::vector<double> row{1.0};
    for (std::size_t k = 1; k <= p; ++k) row.push_back(points[i - k].value);
    rows.push_back(std::move(row));
    targets.push_back(points[i].value);
  }
  if (rows.empty()) {
    throw InsufficientHistoryError("no window of " + std::to_string(p + 1) +
                                   " consecutive ONLINE points");
  }
  auto beta = solveNormalEquations(rows, targets);
  ARModel model;
  model.order = p;
  model.intercept = beta[0];
  model.lags.assign(beta.begin() + 1, beta.end());
  model.residualNorm = residualNorm(rows, targets, beta);
  model.trainingSize = rows.size();
  for (double b : beta) {
    if (!std::isfinite(b)) throw InsufficientHistoryError("AR fit produced non-finite coefficients");
  }
  return model;
}

// _____________________________________________________________________________
LinearModel fitLinear(const std::vector<double>& drivers, const std::vector<double>& targets) {
  if (drivers.empty()) throw InsufficientHistoryError("no training pairs");
  std::vector<std::vector<double>> rows;
  for (double d : drivers) rows.push_back({1.0, d});
  auto beta = solveNormalEquations(rows, targets);
  return {beta[0], beta[1], residualNorm(rows, targets, beta), drivers.size()};
}

// _____________________________________________________________________________
std::string_view toString(Mode mode) {
  return mode == Mode::VeryShortTerm ? "very-short-term" : "day-ahead";
}

// _____________________________________________________________________________
std::string_view toString(Driver driver) {
  return driver == Driver::Irradiance ? "ghi" : "wind";
}

// _____________________________________________________________________________
Driver driverFor(std::string_view eicFunction) {
  return eicFunction == "RES-FV" ? Driver::Irradiance : Driver::WindSpeed;
}

// _____________________________________________________________________________
ForecastResult forecastVeryShortTerm(const TimeSeries& series, Seconds horizon, Seconds step,
                                     std::size_t p) {
  if (horizon > kMaxVeryShortTermHorizon) {
    throw HorizonTooLongError("very-short-term horizon " + std::to_string(horizon.count()) +
                              "s exceeds 2 h");
  }
  if (horizon <= Seconds{0} || step <= Seconds{0} || horizon % step != Seconds{0}) {
    throw InvalidRequestError("step must be positive and divide the horizon");
  }
  if (series.empty()) throw EmptySeriesError("no history for <" + series.plant + ">");
  const Seconds cadence = series.cadence > Seconds{0} ? series.cadence : step;
  if (step % cadence != Seconds{0}) {
    throw InvalidRequestError("step must be a multiple of the series cadence (" +
                              std::to_string(cadence.count()) + "s)");
  }

  ForecastResult result;
  result.request = {series.plant, Mode::VeryShortTerm, series.points.back().ts, horizon, step, {}};
  result.issued = result.request.origin;

  std::vector<double> history;
  for (const auto& point : series.points) history.push_back(point.value);
  std::optional<ARModel> model;
  try {
    model = fitAr(series, p);
  } catch (const InsufficientHistoryError&) {
  }
  const std::string method = model ? "ar(" + std::to_string(p) + ")" : "persistence";
  if (model) {
    result.coefficients.push_back(model->intercept);
    result.coefficients.insert(result.coefficients.end(), model->lags.begin(), model->lags.end());
    result.trainingSize = model->trainingSize;
    result.residualNorm = model->residualNorm;
  }

  const auto stepsPerPoint = step / cadence;
  const auto count = horizon / step;
  const double last = history.back();
  Timestamp ts = result.request.origin;
  for (std::int64_t i = 0; i < count; ++i) {
    double value = last;
    for (std::int64_t k = 0; k < stepsPerPoint; ++k) {
      ts += cadence;
      if (model) {
        value = std::max(0.0, model->predictNext(history));
        history.push_back(value);
      }
    }
    result.points.push_back({ts, std::max(0.0, value), method});
  }
  return result;
}

// _____________________________________________________________________________
ForecastResult forecastDayAhead(const TimeSeries& history, const WeatherSeries& observed,
                                const WeatherSeries& weatherForecast,
                                const DayAheadOptions& options) {
  if (weatherForecast.empty()) throw EmptyWeatherError("empty weather forecast");
  WeatherSeries sortedObserved = observed;
  std::sort(sortedObserved.begin(), sortedObserved.end(),
            [](const WeatherPoint& a, const WeatherPoint& b) { return a.ts < b.ts; });
  Seconds tolerance = cadenceOf(sortedObserved);
  if (tolerance == Seconds{0}) tolerance = history.cadence;
  tolerance /= 2;

  std::vector<double> drivers;
  std::vector<double> targets;
  for (const auto& point : history.points) {
    if (point.status != Status::Online) continue;
    if (const auto* w = nearest(sortedObserved, point.ts, tolerance)) {
      drivers.push_back(driverValue(*w, options.driver));
      targets.push_back(point.value);
    }
  }
  if (drivers.size() < std::max<std::size_t>(options.minPairs, 1)) {
    throw InsufficientHistoryError("day-ahead fit needs " + std::to_string(options.minPairs) +
                                   " matched ONLINE points, got " +
                                   std::to_string(drivers.size()));
  }
  auto model = fitLinear(drivers, targets);

  WeatherSeries forecast = weatherForecast;
  std::sort(forecast.begin(), forecast.end(),
            [](const WeatherPoint& a, const WeatherPoint& b) { return a.ts < b.ts; });
  Seconds step = cadenceOf(forecast);
  if (step == Seconds{0}) step = history.cadence > Seconds{0} ? history.cadence : Seconds{3600};

  ForecastResult result;
  result.request.plant = history.plant;
  result.request.mode = Mode::DayAhead;
  result.request.origin = history.points.back().ts;
  result.request.horizon = forecast.back().ts - forecast.front().ts + step;
  result.request.step = step;
  result.request.outages = options.outages;
  result.issued = result.request.origin;
  result.coefficients = {model.intercept, model.slope};
  result.trainingSize = model.trainingSize;
  result.residualNorm = model.residualNorm;
  const std::string method = "linear(" + std::string(toString(options.driver)) + ")";
  for (const auto& w : forecast) {
    bool masked = std::any_of(options.outages.begin(), options.outages.end(),
                              [&](const Interval& i) { return i.contains(w.ts); });
    if (masked) {
      result.points.push_back({w.ts, 0.0, "outage"});
    } else {
      double kw = model.intercept + model.slope * driverValue(w, options.driver);
      result.points.push_back({w.ts, std::max(0.0, kw), method});
    }
  }
  return result;
}

// _____________________________________________________________________________
std::string forecastIri(const ForecastResult& result) {
  return std::string(vocab::kArtemisData) + "forecast/" + plantUid(result.request.plant) + "/" +
         timestampSlug(result.issued);
}

// _____________________________________________________________________________
std::vector<Triple> forecastTriples(const ForecastResult& result) {
  if (result.points.empty()) throw InvalidRequestError("forecast result has no points");
  const std::string node = forecastIri(result);
  const Term forecast = Term::iri(node);
  const char* type = result.request.mode == Mode::DayAhead ? "LongTermForecast" : "ShortTermForecast";
  std::vector<Triple> out{
      {forecast, Term::iri(std::string(vocab::kRdfType)), artemis(type)},
      {forecast, artemis("issuedAt"), dateTimeLiteral(result.issued)},
      {forecast, artemis("forecastFor"), Term::iri(result.request.plant)},
  };
  for (const auto& p : result.points) {
    Term point = Term::iri(node + "/" + timestampSlug(p.ts));
    out.push_back({point, artemis("pointOf"), forecast});
    out.push_back({point, artemis("forecastTime"), dateTimeLiteral(p.ts)});
    out.push_back({point, artemis("forecastedActivePower"),
                   Term::literal(formatKw(p.kw), std::string(vocab::kXsdDecimal))});
  }
  return out;
}

// _____________________________________________________________________________
std::size_t writeForecast(rdf::TripleStore& store, const ForecastResult& result) {
  return store.insertAll(forecastTriples(result));
}

// _____________________________________________________________________________
std::string toTsv(const ForecastResult& result) {
  std::string out = "ts\tkw\tmethod\n";
  for (const auto& p : result.points) {
    out += formatTimestamp(p.ts) + "\t" + formatKw(p.kw) + "\t" + p.method + "\n";
  }
  return out;
}

// _____________________________________________________________________________
std::vector<Interval> parseOutageSchedule(std::string_view json) {
  nlohmann::json document;
  try {
    document = nlohmann::json::parse(json);
  } catch (const nlohmann::json::parse_error& e) {
    throw ScheduleFormatError(std::string("outage schedule: ") + e.what());
  }
  if (!document.is_array()) throw ScheduleFormatError("outage schedule: root must be an array");
  std::vector<Interval> out;
  for (std::size_t i = 0; i < document.size(); ++i) {
    const auto& entry = document[i];
    const std::string where = "outage schedule entry " + std::to_string(i);
    if (!entry.is_object() || !entry.contains("start") || !entry.contains("end") ||
        !entry["start"].is_string() || !entry["end"].is_string()) {
      throw ScheduleFormatError(where + ": expected {\"start\", \"end\"} strings");
    }
    auto start = parseTimestamp(entry["start"].get<std::string>());
    auto end = parseTimestamp(entry["end"].get<std::string>());
    if (!start || !end) throw ScheduleFormatError(where + ": invalid timestamp");
    if (!(*start < *end)) throw ScheduleFormatError(where + ": end must be after start");
    out.push_back({*start, *end});
  }
  return out;
}

}  // namespace gridkg::forecast
