#include <string>
#include <vector>

#include "twlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return twlab::cli::run(args);
}
