#include <iostream>

#include "resdyn_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return resdyn::cli::dispatch(args, std::cout, std::cerr, std::cin);
}
