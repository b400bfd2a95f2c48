#include <iostream>

#include "qmhs/cli.hpp"

int main(int argc, char** argv) { return qmhs::run_command(argc, argv, std::cout, std::cerr); }
