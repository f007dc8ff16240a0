#include <iostream>

#include "citgen/cli.hpp"

int main(int argc, char** argv) { return citgen::cli::main(argc, argv, std::cout, std::cerr); }
