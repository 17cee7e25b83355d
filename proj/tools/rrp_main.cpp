#include <iostream>

#include "rrp/cli.hpp"

int main(int argc, char** argv) {
  return rrp::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
