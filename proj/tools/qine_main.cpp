#include <iostream>
#include <string>
#include <vector>

#include "qine/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return qine::cli::run(args, std::cout, std::cerr);
}
