#include <string>
#include <vector>

#include "scenecrf/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return scenecrf::cli_main(args);
}
