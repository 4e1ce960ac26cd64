#include <cstdlib>
#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  if (!folia::cli::apply_memory_cap(std::getenv("FOLIA_MAX_MEM"), std::cerr)) return 2;
  std::vector<std::string> args(argv, argv + argc);
  return folia::cli::run(args, std::cout, std::cerr);
}
