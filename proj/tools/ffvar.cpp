#include <iostream>
#include <string>
#include <vector>

#include "ffvar/harness/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ffvar::io::dispatch(args, std::cout, std::cerr);
}
