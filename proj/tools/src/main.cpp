#include <iostream>

#include "spinrotor_cli/cli.hpp"

int main(int argc, char** argv) {
  return spinrotor::cli::run(argc, argv, std::cout, std::cerr);
}
