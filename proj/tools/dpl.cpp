#include <iostream>

#include "dpl/cli.hpp"

int main(int argc, char** argv) { return dpl::cli::run(argc, argv, std::cout, std::cerr); }
