#include <iostream>
#include <string>
#include <vector>

#include "estmap/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return estmap::cli::run(args, std::cout, std::cerr);
}
