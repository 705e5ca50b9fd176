#include <iostream>

#include "instab/cli.hpp"

int main(int argc, char** argv) {
    return instab::run_cli(argc, argv, std::cout, std::cerr);
}
