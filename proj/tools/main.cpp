#include <iostream>

#include "mlgraph_cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mlgraph::cli::run(std::move(args), std::cout, std::cerr);
}
