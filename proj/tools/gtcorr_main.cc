#include <iostream>
#include <string>
#include <vector>

#include "gtcorr/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gtcorr::cli::run(args, std::cout, std::cerr);
}
