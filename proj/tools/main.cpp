#include "dwork/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return dwork::run_cli(argc, argv, std::cout, std::cerr); }
