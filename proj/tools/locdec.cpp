#include <iostream>
#include <string>
#include <vector>

#include "locdec/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return locdec::cli::run(std::move(args), std::cout, std::cerr);
}
