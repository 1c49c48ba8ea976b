#include <iostream>

#include "varnorm/cli/commands.hpp"

int main(int argc, char** argv) { return varnorm::cli::run_command(argc, argv, std::cout, std::cerr); }
