#include <iostream>

#include "sphere/gallery.hpp"

int main() {
  return sphere::print_acceptance(std::cout, sphere::run_acceptance()) ? 0 : 1;
}
