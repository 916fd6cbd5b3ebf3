#include <iostream>
#include <string>
#include <vector>

#include "markov_fuzzy/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return markov_fuzzy::cli::run(args, std::cout, std::cerr);
}
