#include <iostream>

#include "recovercast/cli.hpp"

int main(int argc, char** argv) {
    return recovercast::run_cli(argc, argv, std::cout, std::cerr);
}
