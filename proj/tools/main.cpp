#include <iostream>
#include <string>
#include <vector>

#include "nonlift/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return nonlift::cli::run(args, std::cout, std::cerr);
}
