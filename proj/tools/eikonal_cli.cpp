#include <iostream>

#include "eikonal/cli.hpp"

int main(int argc, char** argv) { return eik::run_cli(argc, argv, std::cout, std::cerr); }
