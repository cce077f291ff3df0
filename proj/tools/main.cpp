#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return qdw::cli::run(argc, argv, std::cout, std::cerr); }
