#include <iostream>

#include "mgw/cli.hpp"

int main(int argc, char** argv) { return mgw::run(argc, argv, std::cout, std::cerr); }
