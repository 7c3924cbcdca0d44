#include "cospa/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return cospa::cli::run(argc, argv, std::cout, std::cerr);
}
