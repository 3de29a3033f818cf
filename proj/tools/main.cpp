#include <iostream>

#include "ptorsion/cli.hpp"

int main(int argc, char** argv) { return ptorsion::cli::run(argc, argv, std::cout, std::cerr); }
