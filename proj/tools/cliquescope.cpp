#include <iostream>
#include <string>
#include <vector>

#include "cliquescope/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return cliquescope::cli::run(args, std::cout, std::cerr);
}
