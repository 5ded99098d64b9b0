#include <iostream>

#include "vrid/cli/app.hpp"

int main(int argc, char** argv) { return vrid::cli::run(argc, argv, std::cout, std::cerr); }
