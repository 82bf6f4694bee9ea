#include "cli_app.hpp"

#include <iostream>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto r = gln::cli::run(args);
  std::cout << r.out;
  std::cerr << r.err;
  return r.code;
}
