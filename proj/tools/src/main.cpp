#include <iostream>

#include "minksum_cli/commands.hpp"

int main(int argc, char** argv) { return minksum::cli::run_cli(argc, argv, std::cout, std::cerr); }
