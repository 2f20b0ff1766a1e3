#include <iostream>

#include "tailspace/cli.hpp"

int main(int argc, char** argv) { return tailspace::run_cli(argc, argv, std::cout, std::cerr); }
