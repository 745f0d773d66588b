#include <iostream>

#include "tripletgen/cli.hpp"

int main(int argc, char** argv) { return tripletgen::cli_main(argc, argv, std::cout, std::cerr); }
