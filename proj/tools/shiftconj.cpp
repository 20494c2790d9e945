#include <iostream>
#include <string>
#include <vector>

#include "shiftconj/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return shiftconj::run(args, std::cout, std::cerr);
}
