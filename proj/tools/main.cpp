#include <iostream>

#include "ens/cli.hpp"

int main(int argc, char** argv) { return ens::cli::run(argc, argv, std::cout, std::cerr); }
