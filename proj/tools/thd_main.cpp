#include <iostream>
#include <string>
#include <vector>

#include "thd/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return thd::cli::run(args, std::cout, std::cerr);
}
