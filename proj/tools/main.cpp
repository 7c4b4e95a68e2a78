#include <iostream>
#include <string>
#include <vector>

#include "mod2betti/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mod2betti::run(args, std::cout, std::cerr);
}
