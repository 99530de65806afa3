#include <iostream>

#include "operlab/cli.hpp"

int main(int argc, char** argv) { return operlab::run_cli(argc, argv, std::cout, std::cerr); }
