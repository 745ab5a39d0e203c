#include <iostream>

#include "holonomy2/cli.hpp"

int main(int argc, char** argv) {
  return holonomy2::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
