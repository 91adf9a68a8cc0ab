#include <iostream>

#include "pfront/cli/commands.hpp"

int main(int argc, char** argv) { return pfront::cli::run_cli(argc, argv, std::cout, std::cerr); }
