#include <iostream>

#include "qpseed/cli.hpp"

int main(int argc, char** argv) { return qpseed::cli::run(argc, argv, std::cout, std::cerr); }
