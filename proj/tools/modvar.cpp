#include <iostream>

#include "modvar/cli.hpp"

int main(int argc, char** argv) { return modvar::run_cli(argc, argv, std::cout, std::cerr); }
