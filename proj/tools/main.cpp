#include <iostream>
#include <string>
#include <vector>

#include "hwkit/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return hwkit::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
