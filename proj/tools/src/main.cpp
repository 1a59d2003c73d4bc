#include <iostream>

#include "amice_cli/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return amice::cli::dispatch(args, std::cout, std::cerr);
}
