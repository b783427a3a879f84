#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gridkg/rdf/TripleStore.h"
#include "gridkg/util/Error.h"
#include "gridkg/util/Time.h"

namespace gridkg::forecast {

class ForecastError : public Error {
 public:
  using Error::Error;
};

// Precondition failures of a forecast request (exit code 4 in the CLI).
class InsufficientHistoryError : public ForecastError {
 public:
  using ForecastError::ForecastError;
};

class HorizonTooLongError : public ForecastError {
 public:
  using ForecastError::ForecastError;
};

class EmptySeriesError : public ForecastError {
 public:
  using ForecastError::ForecastError;
};

class EmptyWeatherError : public ForecastError {
 public:
  using ForecastError::ForecastError;
};

class InvalidRequestError : public ForecastError {
 public:
  using ForecastError::ForecastError;
};

class UnknownPlantError : public Error {
 public:
  explicit UnknownPlantError(const std::string& plant)
      : Error("unknown plant <" + plant + ">") {}
};

enum class Status { Online, Outage };
std::string_view toString(Status status);

struct SeriesPoint {
  Timestamp ts;
  double value = 0.0;
  Status status = Status::Online;
};

// Power observations of one plant in kW with strictly increasing timestamps.
// Missing observations are simply absent; `cadence` is the smallest gap.
struct TimeSeries {
  std::string plant;
  std::vector<SeriesPoint> points;
  Seconds cadence{0};

  bool empty() const { return points.empty(); }
};

// Sorts, drops repeated timestamps (first wins) and recomputes the cadence.
TimeSeries makeSeries(std::string plant, std::vector<SeriesPoint> points);

struct WeatherPoint {
  Timestamp ts;
  double temperature = 0.0;
  double windSpeed = 0.0;
  double irradiance = 0.0;
};

using WeatherSeries = std::vector<WeatherPoint>;

// Smallest gap between consecutive points, 0 for fewer than two.
Seconds cadenceOf(const WeatherSeries& series);

// [start, end)
struct Interval {
  Timestamp start;
  Timestamp end;
  bool contains(Timestamp ts) const { return start <= ts && ts < end; }
};

// Production history of `plant` in [from, to) as stored in the graph. Points
// without an operating status count as ONLINE.
TimeSeries extractSeries(const rdf::TripleStore& store, const std::string& plant, Timestamp from,
                         Timestamp to);

// Weather rows of class `classIri` for `city` in [from, to).
WeatherSeries extractWeather(const rdf::TripleStore& store, const std::string& classIri,
                             const std::string& city, Timestamp from, Timestamp to);

// Literal value of `plant`'s `property`, if any.
std::optional<std::string> plantAttribute(const rdf::TripleStore& store, const std::string& plant,
                                          std::string_view property);

}  // namespace gridkg::forecast
