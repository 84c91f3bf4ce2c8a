#include <iostream>

#include "dibbl_cli.hpp"

int main(int argc, char **argv) { return dibbl::cli::run(argc, argv, std::cout, std::cerr); }
