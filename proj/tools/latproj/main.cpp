#include <iostream>

#include "latproj/commands.hpp"

int main(int argc, char** argv) { return latproj::cli::run(argc, argv, std::cout, std::cerr); }
