#include <iostream>

#include "modalcheck/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return modalcheck::run_cli(args, std::cout, std::cerr);
}
