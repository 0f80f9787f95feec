#include <iostream>

#include "cyclefrac/cli.hpp"

int main(int argc, char** argv) { return cyclefrac::run_cli(argc, argv, std::cout, std::cerr); }
