#include <iostream>

#include "bellquench/cli.hpp"

int main(int argc, char** argv) { return bellquench::cli::run(argc, argv, std::cout, std::cerr); }
