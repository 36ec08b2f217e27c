#include <iostream>

#include "sl2c/cli.hpp"

int main(int argc, char** argv) { return sl2c::cli::run(argc, argv, std::cout, std::cerr); }
