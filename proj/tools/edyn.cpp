#include <iostream>

#include "entire_dynamics/cli.hpp"

int main(int argc, char** argv) { return ed::run_cli(argc, argv, std::cout, std::cerr); }
