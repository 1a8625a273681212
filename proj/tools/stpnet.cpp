#include <iostream>

#include "stpnet/cli.hpp"

int main(int argc, char** argv) { return stpnet::cli::main(argc, argv, std::cout, std::cerr); }
