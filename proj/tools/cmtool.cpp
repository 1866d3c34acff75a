#include "cmf/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return cmf::cli::run(argc, argv, std::cout, std::cerr); }
