#include <iostream>

#include "dicke/cli.hpp"

int main(int argc, char** argv) { return dicke::cli::main_entry(argc, argv, std::cout, std::cerr); }
