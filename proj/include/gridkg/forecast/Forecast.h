#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gridkg/forecast/Series.h"
#include "gridkg/rdf/Triple.h"

namespace gridkg::forecast {

// Very-short-term forecasts may look at most this far ahead.
inline constexpr Seconds kMaxVeryShortTermHorizon{2 * 3600};

// value_t ≈ intercept + Σ lags[i] · value_{t-1-i}
struct ARModel {
  std::size_t order = 1;
  double intercept = 0.0;
  std::vector<double> lags;
  double residualNorm = 0.0;
  std::size_t trainingSize = 0;

  // `history` ends with the most recent value; needs at least `order` values.
  double predictNext(const std::vector<double>& history) const;
};

// power ≈ intercept + slope · driver
struct LinearModel {
  double intercept = 0.0;
  double slope = 0.0;
  double residualNorm = 0.0;
  std::size_t trainingSize = 0;
};

// Least-squares coefficients through the normal equations XᵀX β = Xᵀy,
// minimum-norm when XᵀX is singular. `rows` are the rows of X.
std::vector<double> solveNormalEquations(const std::vector<std::vector<double>>& rows,
                                         const std::vector<double>& targets);

// Fits on windows of p+1 consecutive (one cadence apart) ONLINE points.
// Throws InsufficientHistoryError with fewer than p+1 ONLINE points or no
// complete window.
ARModel fitAr(const TimeSeries& series, std::size_t p);

LinearModel fitLinear(const std::vector<double>& drivers, const std::vector<double>& targets);

enum class Mode { VeryShortTerm, DayAhead };
std::string_view toString(Mode mode);

enum class Driver { WindSpeed, Irradiance };
std::string_view toString(Driver driver);
// Irradiance for photovoltaic plants ("RES-FV"), wind speed otherwise.
Driver driverFor(std::string_view eicFunction);

struct ForecastRequest {
  std::string plant;
  Mode mode = Mode::VeryShortTerm;
  Timestamp origin;
  Seconds horizon{0};
  Seconds step{0};
  std::vector<Interval> outages;
};

struct ForecastPoint {
  Timestamp ts;
  double kw = 0.0;
  std::string method;
};

struct ForecastResult {
  ForecastRequest request;
  Timestamp issued;
  std::vector<ForecastPoint> points;
  std::vector<double> coefficients;
  std::size_t trainingSize = 0;
  double residualNorm = 0.0;
};

// Iterated one-step AR(p) predictions from the end of `series`, falling back
// to persistence when the fit lacks history. `step` must be a multiple of the
// series cadence and divide `horizon`.
ForecastResult forecastVeryShortTerm(const TimeSeries& series, Seconds horizon, Seconds step,
                                     std::size_t p = 4);

struct DayAheadOptions {
  Driver driver = Driver::WindSpeed;
  std::size_t minPairs = 24;
  std::vector<Interval> outages;
};

// Fits power on the driver over ONLINE history points matched to the nearest
// observation within half the observation cadence, then predicts one point
// per forecast row. Points inside an outage interval are 0.
ForecastResult forecastDayAhead(const TimeSeries& history, const WeatherSeries& observed,
                                const WeatherSeries& weatherForecast,
                                const DayAheadOptions& options);

// IRI of the forecast node minted for `result`.
std::string forecastIri(const ForecastResult& result);

// 3 triples for the forecast node plus 3 per point.
std::vector<rdf::Triple> forecastTriples(const ForecastResult& result);

// Inserts forecastTriples(result); returns the number actually added.
std::size_t writeForecast(rdf::TripleStore& store, const ForecastResult& result);

// "ts\tkw\tmethod" header plus one row per point.
std::string toTsv(const ForecastResult& result);

class ScheduleFormatError : public Error {
 public:
  using Error::Error;
};

// [{"start": "...", "end": "..."}, ...]
std::vector<Interval> parseOutageSchedule(std::string_view json);

}  // namespace gridkg::forecast
