#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return ohash::cli::run(argc, argv, std::cout, std::cerr);
}
