#include <iostream>

#include "nilsson/cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return nilsson::cli::run(args, std::cout, std::cerr);
}
