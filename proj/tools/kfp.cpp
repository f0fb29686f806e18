#include <iostream>
#include <string>
#include <vector>

#include "kfp/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return kfp::cli::run(args, std::cout, std::cerr);
}
