#include <iostream>
#include <string>
#include <vector>

#include "spgcd/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return spgcd::cli::run_cli(args, std::cout, std::cerr);
}
