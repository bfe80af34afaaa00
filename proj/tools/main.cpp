#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "lagidx/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> profile;
  if (const char* env = std::getenv(lagidx::kToleranceEnv)) profile = env;
  return lagidx::run_cli(args, std::cout, std::cerr, profile);
}
