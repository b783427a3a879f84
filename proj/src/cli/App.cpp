#include "gridkg/cli/App.h"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "gridkg/connectors/Source.h"
#include "gridkg/forecast/Forecast.h"
#include "gridkg/mapping/Mapping.h"
#include "gridkg/ontology/Closure.h"
#include "gridkg/ontology/Ontology.h"
#include "gridkg/ontology/Validation.h"
#include "gridkg/query/Competency.h"
#include "gridkg/query/Evaluator.h"
#include "gridkg/query/Virtual.h"
#include "gridkg/rdf/Turtle.h"
#include "gridkg/rdf/Vocab.h"
#include "json.hpp"

namespace gridkg::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string readText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void writeText(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
}

void requirePath(const fs::path& path, const char* what) {
  if (!fs::exists(path)) throw UsageError(std::string(what) + " not found: " + path.string());
}

std::string fixed(double value, int digits = 6) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << value;
  return s.str();
}

// Everything the materialized pipeline reads.
struct Inputs {
  ontology::LoadedOntology ontology;
  connectors::SourceCatalog sources;
  std::vector<mapping::MappingRule> rules;
};

Inputs loadInputs(const RunConfig& config) {
  requirePath(config.ontologyDir, "ontology directory");
  requirePath(config.mappings, "mappings file");
  requirePath(config.sourcesDir / "sources.json", "source catalog");
  Inputs in{ontology::loadModuleDirectory(config.ontologyDir),
            connectors::loadSourceCatalog(config.sourcesDir / "sources.json"), {}};
  in.rules = mapping::loadMappings(config.mappings, in.sources);
  return in;
}

query::CompetencyCatalog loadCatalog(const RunConfig& config) {
  requirePath(config.cqCatalog, "CQ catalog");
  return query::loadCatalog(config.cqCatalog);
}

// Ontology plus materialized data.
rdf::TripleStore buildBase(const Inputs& in, mapping::MaterializationReport& report) {
  rdf::TripleStore store;
  store.insertAll(in.ontology.store.triples());
  report = mapping::materialize(in.rules, in.sources, store, &in.ontology.store);
  return store;
}

// The asserted graph: the snapshot when one exists, otherwise built in memory.
rdf::TripleStore loadBase(const RunConfig& config, std::ostream& err) {
  if (fs::exists(config.snapshot)) {
    if (config.verbosity > 0) err << "loading snapshot " << config.snapshot.string() << "\n";
    rdf::TripleStore store;
    store.insertAll(rdf::parseTurtle(readText(config.snapshot)).triples);
    return store;
  }
  if (config.verbosity > 0) err << "no snapshot, building in memory\n";
  mapping::MaterializationReport report;
  return buildBase(loadInputs(config), report);
}

void writeSnapshot(const RunConfig& config, const rdf::TripleStore& store) {
  writeText(config.snapshot, rdf::serializeTurtle(store.triples(), rdf::standardPrefixes()));
}

void requireMaterialized(const RunConfig& config, const char* command) {
  if (config.mode == AccessMode::Virtual) {
    throw UsageError(std::string(command) + " needs the materialized graph; mode is virtual");
  }
}

// "k=v" and "k=v,k2=v2" forms.
query::CqParams parseParams(const std::vector<std::string>& items,
                            const query::CompetencyQuestion& question) {
  query::CqParams params;
  for (const auto& item : items) {
    std::stringstream parts(item);
    std::string pair;
    while (std::getline(parts, pair, ',')) {
      if (pair.empty()) continue;
      auto eq = pair.find('=');
      if (eq == std::string::npos || eq == 0) throw UsageError("--param expects k=v, got '" + pair + "'");
      std::string key = pair.substr(0, eq);
      bool known = std::any_of(question.parameters.begin(), question.parameters.end(),
                               [&](const auto& p) { return p.name == key; });
      if (!known) throw UsageError(question.id + " has no parameter '" + key + "'");
      params[key] = pair.substr(eq + 1);
    }
  }
  return params;
}

std::string expandIri(const std::string& text) {
  auto colon = text.find(':');
  if (colon != std::string::npos) {
    if (auto ns = rdf::standardPrefixes().namespaceOf(text.substr(0, colon))) {
      return *ns + text.substr(colon + 1);
    }
  }
  return text;
}

Timestamp timestampOption(const std::string& text, const char* option) {
  auto ts = parseTimestamp(text);
  if (!ts) throw UsageError(std::string(option) + ": invalid timestamp '" + text + "'");
  return *ts;
}

Seconds durationOption(const std::string& text, const char* option) {
  auto d = parseDuration(text);
  if (!d) throw UsageError(std::string(option) + ": invalid duration '" + text + "'");
  return *d;
}

// _____________________________________________________________________________
struct BuildCommand {
  int run(const RunConfig& config, std::ostream& out, std::ostream& err) const {
    requireMaterialized(config, "build");
    auto in = loadInputs(config);
    mapping::MaterializationReport report;
    auto base = buildBase(in, report);
    auto closure = ontology::computeClosure(base);
    writeSnapshot(config, base);
    for (const auto& w : in.ontology.warnings) err << "warning: " << w << "\n";
    for (const auto& w : report.warnings) err << "warning: " << w << "\n";
    out << "rows read\t" << report.rowsRead << "\n"
        << "rows skipped\t" << report.rowsSkipped << "\n"
        << "triples generated\t" << report.triplesGenerated << "\n"
        << "duplicates suppressed\t" << report.duplicatesSuppressed << "\n"
        << "dropped assertions\t" << report.droppedAssertions << "\n"
        << "store growth\t" << report.storeGrowth() << "\n"
        << "ontology triples\t" << in.ontology.store.size() << "\n"
        << "base triples\t" << closure.baseSize() << "\n"
        << "inferred triples\t" << closure.inferredSize() << "\n";
    err << "snapshot written to " << config.snapshot.string() << "\n";
    return kSuccess;
  }
};

// _____________________________________________________________________________
struct ValidateCommand {
  int run(const RunConfig& config, std::ostream& out, std::ostream& err) const {
    requireMaterialized(config, "validate");
    requirePath(config.ontologyDir, "ontology directory");
    auto loaded = ontology::loadModuleDirectory(config.ontologyDir);
    auto catalog = loadCatalog(config);
    auto base = loadBase(config, err);
    auto report = ontology::validate(base, loaded.modules);
    auto closure = ontology::computeClosure(base);
    report.competency = query::checkCompetency(closure.graph(), catalog, {}, {});

    out << "clarity\t" << fixed(report.clarity) << "\t" << report.clearTermCount << "/"
        << report.termCount << "\n";
    out << "coherence findings\t" << report.coherence.size() << "\n";
    for (const auto& f : report.coherence) {
      out << "  " << toString(f.kind) << "\t" << f.message << "\n";
    }
    out << "modularity\n";
    for (const auto& m : report.modularity) {
      out << "  " << m.module << "\t" << m.internalRefs << "\t" << m.externalRefs << "\t"
          << fixed(m.score) << "\n";
    }
    out << "competency\n";
    for (const auto& r : report.competency) {
      out << "  " << r.id << "\t" << (r.passed ? "PASS" : "FAIL") << "\t" << r.message << "\t"
          << r.title << "\n";
    }
    if (report.hasFailures()) {
      err << "validation failures present\n";
      return kValidationFailures;
    }
    return kSuccess;
  }
};

// _____________________________________________________________________________
struct QueryCommand {
  std::string file;
  std::string text;
  bool virtualMode = false;

  int run(const RunConfig& config, std::ostream& out, std::ostream& err) const {
    std::string queryText = file.empty() ? text : readText(file);
    auto q = query::parseQuery(queryText);
    if (virtualMode || config.mode == AccessMode::Virtual) {
      auto in = loadInputs(config);
      auto plan = query::rewriteVirtual(q, in.rules);
      if (config.verbosity > 0) err << plan.describe();
      out << query::toTsv(query::evaluateVirtual(plan, in.sources), q.prefixes);
      return kSuccess;
    }
    auto closure = ontology::computeClosure(loadBase(config, err));
    out << query::toTsv(query::evaluate(q, closure.graph()), q.prefixes);
    return kSuccess;
  }
};

// _____________________________________________________________________________
struct CqCommand {
  std::string id;
  std::vector<std::string> params;
  bool virtualMode = false;

  int run(const RunConfig& config, std::ostream& out, std::ostream& err) const {
    auto catalog = loadCatalog(config);
    const auto& question = catalog.at(id);
    auto values = parseParams(params, question);
    if (virtualMode || config.mode == AccessMode::Virtual) {
      auto q = query::parseQuery(query::instantiate(question, values, true));
      auto in = loadInputs(config);
      auto result = query::evaluateVirtual(query::rewriteVirtual(q, in.rules), in.sources);
      out << query::toTsv(result, q.prefixes);
      err << id << ": " << result.rows.size() << " rows (virtual)\n";
      return kSuccess;
    }
    auto closure = ontology::computeClosure(loadBase(config, err));
    auto result = query::checkCompetency(closure.graph(), catalog, {id}, values).front();
    out << query::toTsv(result.rows, rdf::standardPrefixes());
    err << id << ": " << result.message << (result.passed ? "" : " (FAIL)") << "\n";
    return kSuccess;
  }
};

// _____________________________________________________________________________
struct ForecastCommand {
  std::string plant;
  std::string mode;
  std::string horizon;
  std::string step;
  std::size_t order = 4;
  std::string from;
  std::string to;
  std::string weatherFrom;
  std::string weatherTo;
  std::string outages;
  std::size_t minPairs = 24;
  bool write = false;
  std::string format = "tsv";

  int run(const RunConfig& config, std::ostream& out, std::ostream& err) const {
    requireMaterialized(config, "forecast");
    const std::string plantIri = expandIri(plant);
    auto base = loadBase(config, err);
    const Timestamp begin = from.empty() ? Timestamp{} : timestampOption(from, "--from");
    const Timestamp end = to.empty() ? Timestamp{Seconds{253402300799}} : timestampOption(to, "--to");
    auto history = forecast::extractSeries(base, plantIri, begin, end);

    forecast::ForecastResult result;
    if (mode == "vst" || mode == "very-short-term") {
      result = forecast::forecastVeryShortTerm(
          history, durationOption(horizon.empty() ? "2h" : horizon, "--horizon"),
          durationOption(step.empty() ? "15m" : step, "--step"), order);
    } else {
      if (history.empty()) throw forecast::EmptySeriesError("no history for <" + plantIri + ">");
      auto city = forecast::plantAttribute(base, plantIri, "city");
      if (!city) throw forecast::InvalidRequestError("plant has no artemis:city");
      auto eic = forecast::plantAttribute(base, plantIri, "eicFunction").value_or("");
      // Default forecast window: the UTC day after the last history point.
      auto lastDay = std::chrono::floor<std::chrono::days>(history.points.back().ts);
      Timestamp wxFrom = weatherFrom.empty() ? Timestamp{lastDay + std::chrono::days{1}}
                                             : timestampOption(weatherFrom, "--weather-from");
      Timestamp wxTo = weatherTo.empty() ? wxFrom + std::chrono::days{1}
                                         : timestampOption(weatherTo, "--weather-to");
      auto observed = forecast::extractWeather(
          base, std::string(vocab::kArtemis) + "WeatherObservation", *city,
          history.points.front().ts - history.cadence, history.points.back().ts + history.cadence);
      auto weather = forecast::extractWeather(
          base, std::string(vocab::kArtemis) + "WeatherForecast", *city, wxFrom, wxTo);
      forecast::DayAheadOptions options;
      options.driver = forecast::driverFor(eic);
      options.minPairs = minPairs;
      if (!outages.empty()) options.outages = forecast::parseOutageSchedule(readText(outages));
      result = forecast::forecastDayAhead(history, observed, weather, options);
    }

    err << "forecast " << forecast::forecastIri(result) << ": " << result.points.size()
        << " points, " << result.points.front().method << ", trained on " << result.trainingSize
        << " points\n";
    if (format == "turtle") {
      out << rdf::serializeTurtle(forecast::forecastTriples(result), rdf::standardPrefixes());
    } else {
      out << forecast::toTsv(result);
    }
    if (write) {
      auto added = forecast::writeForecast(base, result);
      writeSnapshot(config, base);
      err << "wrote " << added << " triples to " << config.snapshot.string() << "\n";
    }
    return kSuccess;
  }
};

}  // namespace

// _____________________________________________________________________________
void applyConfigFile(RunConfig& config, const fs::path& path) {
  json document;
  try {
    document = json::parse(readText(path));
  } catch (const json::parse_error& e) {
    throw UsageError("config " + path.string() + ": " + e.what());
  }
  if (!document.is_object()) throw UsageError("config " + path.string() + ": expected an object");
  const fs::path dir = path.parent_path();
  auto pathField = [&](const std::string& key, const json& value) {
    if (!value.is_string()) throw UsageError("config field '" + key + "' must be a string");
    fs::path p = value.get<std::string>();
    return p.is_relative() ? dir / p : p;
  };
  for (const auto& [key, value] : document.items()) {
    if (key == "ontology_dir") {
      config.ontologyDir = pathField(key, value);
    } else if (key == "mappings") {
      config.mappings = pathField(key, value);
    } else if (key == "sources_dir") {
      config.sourcesDir = pathField(key, value);
    } else if (key == "snapshot") {
      config.snapshot = pathField(key, value);
    } else if (key == "cq_catalog") {
      config.cqCatalog = pathField(key, value);
    } else if (key == "mode") {
      if (value == "materialized") {
        config.mode = AccessMode::Materialized;
      } else if (value == "virtual") {
        config.mode = AccessMode::Virtual;
      } else {
        throw UsageError("config field 'mode' must be \"materialized\" or \"virtual\"");
      }
    } else if (key == "verbosity") {
      if (!value.is_number_integer()) throw UsageError("config field 'verbosity' must be an integer");
      config.verbosity = value.get<int>();
    } else {
      throw UsageError("unknown config field '" + key + "'");
    }
  }
}

// _____________________________________________________________________________
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Smart-grid knowledge graph toolkit", "gridkg"};
  app.require_subcommand(1);

  std::string configFile;
  std::string ontologyDir, mappings, sourcesDir, snapshot, cqCatalog;
  int verbose = 0;
  app.add_option("--config", configFile, "JSON run configuration");
  app.add_option("--ontology-dir", ontologyDir, "Directory of ontology modules (*.ttl)");
  app.add_option("--mappings", mappings, "Mapping rules (JSON)");
  app.add_option("--sources-dir", sourcesDir, "Directory holding sources.json");
  app.add_option("--snapshot", snapshot, "Turtle snapshot of the asserted graph");
  app.add_option("--cq-catalog", cqCatalog, "Competency question catalog");
  app.add_flag("-v,--verbose", verbose, "More diagnostics on stderr");

  BuildCommand build;
  app.add_subcommand("build", "Materialize the sources and write the snapshot");

  ValidateCommand validate;
  app.add_subcommand("validate", "Clarity, coherence, modularity and CQ checks");

  QueryCommand query;
  auto* querySub = app.add_subcommand("query", "Evaluate a SELECT query, print TSV");
  auto* fileOpt = querySub->add_option("--file", query.file, "Query file");
  auto* textOpt = querySub->add_option("--text", query.text, "Query text");
  fileOpt->excludes(textOpt);
  querySub->add_flag("--virtual", query.virtualMode, "Answer from the sources without materializing");

  CqCommand cq;
  auto* cqSub = app.add_subcommand("cq", "Run a catalog competency question, print TSV");
  cqSub->add_option("id", cq.id, "Question id, e.g. CQ5")->required();
  cqSub->add_option("--param", cq.params, "k=v or k=v,k2=v2 (repeatable)");
  cqSub->add_flag("--virtual", cq.virtualMode, "Closure-free form over the sources");

  ForecastCommand fc;
  auto* fcSub = app.add_subcommand("forecast", "Forecast production of one plant");
  fcSub->add_option("--plant", fc.plant, "Plant IRI (prefixed names allowed)")->required();
  fcSub->add_option("--mode", fc.mode, "vst | day-ahead")
      ->required()
      ->check(CLI::IsMember({"vst", "very-short-term", "day-ahead"}));
  fcSub->add_option("--horizon", fc.horizon, "Very-short-term horizon (default 2h)");
  fcSub->add_option("--step", fc.step, "Very-short-term step (default 15m)");
  fcSub->add_option("--order", fc.order, "AR order (default 4)")->check(CLI::PositiveNumber);
  fcSub->add_option("--from", fc.from, "History start (inclusive)");
  fcSub->add_option("--to", fc.to, "History end (exclusive)");
  fcSub->add_option("--weather-from", fc.weatherFrom, "Day-ahead weather forecast start");
  fcSub->add_option("--weather-to", fc.weatherTo, "Day-ahead weather forecast end");
  fcSub->add_option("--outages", fc.outages, "Outage schedule JSON file");
  fcSub->add_option("--min-pairs", fc.minPairs, "Minimum matched history points (default 24)");
  fcSub->add_flag("--write", fc.write, "Write the forecast into the snapshot");
  fcSub->add_option("--format", fc.format, "tsv | turtle")->check(CLI::IsMember({"tsv", "turtle"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (querySub->parsed() && query.file.empty() && query.text.empty()) {
      throw UsageError("query needs --file or --text");
    }
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    RunConfig config;
    if (!configFile.empty()) applyConfigFile(config, configFile);
    if (!ontologyDir.empty()) config.ontologyDir = ontologyDir;
    if (!mappings.empty()) config.mappings = mappings;
    if (!sourcesDir.empty()) config.sourcesDir = sourcesDir;
    if (!snapshot.empty()) config.snapshot = snapshot;
    if (!cqCatalog.empty()) config.cqCatalog = cqCatalog;
    config.verbosity = std::max(config.verbosity, verbose);

    const auto* sub = app.get_subcommands().front();
    if (sub->get_name() == "build") return build.run(config, out, err);
    if (sub->get_name() == "validate") return validate.run(config, out, err);
    if (sub->get_name() == "query") return query.run(config, out, err);
    if (sub->get_name() == "cq") return cq.run(config, out, err);
    return fc.run(config, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const query::UnknownCompetencyQuestionError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const forecast::ForecastError& e) {
    err << "forecast precondition failed: " << e.what() << "\n";
    return kForecastPrecondition;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  }
}

}  // namespace gridkg::cli
