#include <iostream>
#include <string>
#include <vector>

#include "dualshift/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return dualshift::run_cli(args, std::cout, std::cerr);
}
