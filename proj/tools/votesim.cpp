#include <iostream>

#include "votesim/cli.hpp"

int main(int argc, char** argv) {
    return votesim::cli::run(argc, argv, std::cout, std::cerr);
}
