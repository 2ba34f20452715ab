#include <iostream>
#include <string>
#include <vector>

#include "edvw/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return edvw::run_cli(args, std::cout, std::cerr);
}
