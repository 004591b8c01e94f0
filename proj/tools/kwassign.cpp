#include <iostream>
#include <string>
#include <vector>

#include "kwassign/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return kwassign::cli::run(args, std::cout, std::cerr);
}
