#include <iostream>

#include "gabor_cube/cli.hpp"

int main(int argc, char** argv) { return gabor_cube::cli::run(argc, argv, std::cout, std::cerr); }
