#include <iostream>

#include "fracent_tools/cli.hpp"

int main(int argc, char** argv) { return fracent::tools::run_cli(argc, argv, std::cout, std::cerr); }
