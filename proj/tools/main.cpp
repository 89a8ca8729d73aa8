#include <iostream>

#include "fibgirth/cli.hpp"

int main(int argc, char** argv) { return fibgirth::run(argc, argv, std::cout, std::cerr); }
