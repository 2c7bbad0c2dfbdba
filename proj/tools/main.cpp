#include <string>
#include <vector>

#include "seirah/cli.hpp"

int main(int argc, char** argv) {
  return seirah::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
