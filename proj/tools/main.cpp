#include <iostream>

#include "sphere/cli.hpp"

int main(int argc, char** argv) {
  return sphere::run_cli(argc, argv, std::cout, std::cerr);
}
