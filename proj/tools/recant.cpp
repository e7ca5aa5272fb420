#include <iostream>
#include <string>
#include <vector>

#include "recant/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return recant::run(args, std::cout, std::cerr);
}
