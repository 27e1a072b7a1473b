#include <iostream>

#include "ssprk_cli.hpp"

int main(int argc, char** argv) {
  const auto res = ssprk::cli::dispatch(std::vector<std::string>(argv + 1, argv + argc));
  std::cout << res.out;
  std::cerr << res.err;
  return res.exit_code;
}
