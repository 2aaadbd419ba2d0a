#include <iostream>

#include "qmod/cli.hpp"

int main(int argc, char** argv) { return qmod::run(argc, argv, std::cout, std::cerr); }
