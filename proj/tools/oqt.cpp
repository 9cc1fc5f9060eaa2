#include <iostream>

#include "oqt/cli.hpp"

int main(int argc, char** argv) { return oqt::cli::run(argc, argv, std::cout, std::cerr); }
