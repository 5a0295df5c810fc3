#include <iostream>
#include <string>
#include <vector>

#include "minlen/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return minlen::cli::run_cli(args, std::cout, std::cerr);
}
