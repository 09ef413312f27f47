#include <iostream>

#include "beliefvote/cli.hpp"

int main(int argc, char** argv) {
  return beliefvote::cli_main(argc, argv, std::cout, std::cerr);
}
