#include <iostream>
#include <string>
#include <vector>

#include "hypergrid/engine_io.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hg::io::cli_main(args, std::cout, std::cerr);
}
