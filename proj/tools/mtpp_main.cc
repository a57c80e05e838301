#include <iostream>
#include <string>
#include <vector>

#include "mtpp/cli.h"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return mtpp::cli::run(args, std::cout, std::cerr);
}
