#include <iostream>

#include "orbivol/cli.hpp"

int main(int argc, char** argv) {
  return orbivol::cli::run(argc, argv, std::cout, std::cerr);
}
