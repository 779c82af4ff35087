#include <iostream>
#include <string>
#include <vector>

#include "ksorder/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return ksorder::cli::run(args, std::cout, std::cerr);
}
