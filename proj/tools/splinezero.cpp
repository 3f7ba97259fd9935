#include <iostream>

#include "splinezero/cli.hpp"

int main(int argc, char** argv) {
  return splinezero::cli::cli_main(argc, argv, std::cout, std::cerr);
}
