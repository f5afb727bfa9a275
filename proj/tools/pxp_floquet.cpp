#include <iostream>

#include "pxp/commands.hpp"

int main(int argc, char** argv) { return pxp::run_cli(argc, argv, std::cout, std::cerr); }
