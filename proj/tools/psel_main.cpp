#include <iostream>
#include <string>
#include <vector>

#include "psel/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return psel::cli::run(args, std::cout, std::cerr);
}
