#include <iostream>
#include <string>
#include <vector>

#include "pldiv/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return pldiv::run_cli(args, std::cout, std::cerr);
}
