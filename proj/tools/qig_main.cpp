#include <iostream>

#include "qig/commands.hpp"

int main(int argc, char** argv) { return qig::cli::run(argc, argv, std::cout, std::cerr); }
