#include <iostream>

#include "greycast/cli.hpp"

int main(int argc, char** argv) {
    return greycast::run_cli(argc, argv, std::cout, std::cerr);
}
