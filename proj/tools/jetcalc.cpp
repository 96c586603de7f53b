#include <iostream>
#include <string>
#include <vector>

#include "jets/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return jets::cli::run(args, std::cout, std::cerr);
}
