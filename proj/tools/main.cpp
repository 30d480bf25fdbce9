#include <iostream>
#include <string>
#include <vector>

#include "suspk/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return suspk::run_cli(args, std::cout);
}
