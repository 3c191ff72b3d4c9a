#include <iostream>
#include <string>
#include <vector>

#include "cubecut/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cubecut::run(args, std::cout, std::cerr);
}
