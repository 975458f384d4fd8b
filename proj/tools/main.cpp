#include <iostream>

#include "grpd/cli.hpp"

int main(int argc, char** argv) {
  return grpd::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
