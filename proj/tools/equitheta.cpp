#include <iostream>

#include "equitheta/cli.hpp"

int main(int argc, char** argv) { return equitheta::cli::run_cli(argc, argv, std::cout, std::cerr); }
