#include <iostream>

#include "gkdim/cli.hpp"

int main(int argc, char** argv) { return gkdim::run_cli(argc, argv, std::cout, std::cerr); }
