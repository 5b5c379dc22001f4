#include "heis_cli.hpp"

#include <iostream>

int main(int argc, char **argv) { return heis::cli::run(argc, argv, std::cout, std::cerr); }
