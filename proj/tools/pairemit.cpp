#include <iostream>
#include <string>
#include <vector>

#include "pairemit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pairemit::cli::run(args, std::cout, std::cerr);
}
