#include <iostream>

#include "norlund/cli.hpp"

int main(int argc, char** argv) {
  return norlund::cli_main(argc, argv, std::cout, std::cerr);
}
