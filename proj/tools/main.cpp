#include <iostream>

#include "gcontact/cli.hpp"

int main(int argc, char** argv) {
  return gcontact::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
