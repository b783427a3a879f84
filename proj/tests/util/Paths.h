#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace gridkg::testutil {

inline std::filesystem::path dataDir() { return GRIDKG_DATA_DIR; }
inline std::filesystem::path fixtureDir() { return GRIDKG_TEST_FIXTURES; }

inline std::string readFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace gridkg::testutil
