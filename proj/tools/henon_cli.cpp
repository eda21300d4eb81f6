#include <iostream>

#include "henon/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return henon::run_cli(args, std::cout, std::cerr);
}
