#include <iostream>
#include <string>
#include <vector>

#include "dkq/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dkq::cli::run(args, std::cout, std::cerr);
}
