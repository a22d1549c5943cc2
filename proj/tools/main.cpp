#include <iostream>

#include "kstarlab/cli.hpp"

int main(int argc, char** argv) {
  return kstarlab::cli::run_cli(argc, argv, std::cout, std::cerr);
}
