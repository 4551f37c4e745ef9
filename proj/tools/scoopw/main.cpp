#include <exception>
#include <iostream>

#include "scoopw/cli/commands.hpp"

int main(int argc, char** argv) {
  try {
    return scoopw::run_cli(argc, argv, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
