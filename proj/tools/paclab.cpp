#include <iostream>
#include <string>
#include <vector>

#include "paclab_cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return paclab::cli::run(args, std::cout, std::cerr);
}
