#include <iostream>

#include "rcw/cli.hpp"

int main(int argc, char** argv) { return rcw::run_cli(argc, argv, std::cout, std::cerr); }
