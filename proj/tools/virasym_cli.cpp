#include <virasym/cli.hpp>

#include <iostream>

int main(int argc, char** argv) { return virasym::cli::run(argc, argv, std::cout, std::cerr); }
