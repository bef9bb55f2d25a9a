#include <iostream>

#include "conicdual/cli.hpp"

int main(int argc, char** argv) {
  return conicdual::cli::run_main(argc, argv, std::cout, std::cerr);
}
