#include <iostream>
#include <string>
#include <vector>

#include "selres/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return selres::cli::run(args, std::cout, std::cerr);
}
