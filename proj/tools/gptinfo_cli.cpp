#include <iostream>
#include <string>
#include <vector>

#include "gptinfo/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gptinfo::cli::run(args, std::cout, std::cerr);
}
