#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "gridkg/util/Error.h"

namespace gridkg::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kDataError = 2,
  kValidationFailures = 3,
  kForecastPrecondition = 4,
};

class UsageError : public Error {
 public:
  using Error::Error;
};

enum class AccessMode { Materialized, Virtual };

// Paths and settings shared by all subcommands. A JSON config file uses the
// same field names; relative paths in it resolve against its directory.
struct RunConfig {
  std::filesystem::path ontologyDir = "data/ontology";
  std::filesystem::path mappings = "data/mappings/artemis-mappings.json";
  std::filesystem::path sourcesDir = "data/sources";
  std::filesystem::path snapshot = "gridkg-snapshot.ttl";
  std::filesystem::path cqCatalog = "data/cq/catalog.txt";
  AccessMode mode = AccessMode::Materialized;
  int verbosity = 0;
};

// Applies the fields present in the JSON file at `path` to `config`.
// Throws UsageError for unknown fields or ill-typed values.
void applyConfigFile(RunConfig& config, const std::filesystem::path& path);

// Runs one command line (without the program name). Data goes to `out`,
// diagnostics to `err`; returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gridkg::cli
