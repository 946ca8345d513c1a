#include <iostream>

#include "factpow/cli.hpp"

int main(int argc, char** argv) { return factpow::run_cli(argc, argv, std::cout, std::cerr); }
