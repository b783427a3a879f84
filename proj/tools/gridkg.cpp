#include <iostream>
#include <string>
#include <vector>

#include "gridkg/cli/App.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gridkg::cli::run(args, std::cout, std::cerr);
}
