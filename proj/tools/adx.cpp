#include <iostream>
#include <string>
#include <vector>

#include "adx/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return adx::run_cli(args, std::cout, std::cerr);
}
