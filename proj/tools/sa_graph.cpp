#include <iostream>
#include <string>
#include <vector>

#include "sagraph/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sagraph::run(args, std::cout, std::cerr);
}
