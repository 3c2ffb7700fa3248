#include <iostream>
#include <string>
#include <vector>

#include "sigflow/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return sigflow::run_command(args, std::cout, std::cerr);
}
