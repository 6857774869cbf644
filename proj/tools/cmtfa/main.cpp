#include <iostream>
#include <string>
#include <vector>

#include "cmtfa/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cmtfa::cli::run(args, std::cout, std::cerr);
}
