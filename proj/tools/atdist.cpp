#include <iostream>

#include "atdist/cli.hpp"

int main(int argc, char** argv) { return atdist::cli::run(argc, argv, std::cout, std::cerr); }
