#include <iostream>

#include "latdist/cli.hpp"

int main(int argc, char** argv) { return latdist::run_cli(argc, argv, std::cout, std::cerr); }
