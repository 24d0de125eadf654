#include <iostream>

#include "symqm/cli.hpp"

int main(int argc, char** argv) { return symqm::cli_main(argc, argv, std::cout, std::cerr); }
