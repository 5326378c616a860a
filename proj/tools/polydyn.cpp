#include <iostream>

#include "polydyn/cli.hpp"

int main(int argc, char** argv) { return polydyn::run_command(argc, argv, std::cout, std::cerr); }
