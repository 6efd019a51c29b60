#include <iostream>

#include "oscdict/cli.hpp"

int main(int argc, char** argv) {
    return oscdict::cli::run(argc, argv, std::cout, std::cerr);
}
