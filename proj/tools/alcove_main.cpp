#include <iostream>
#include <string>
#include <vector>

#include "alcove/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return alcove::run_query(args, std::cout, std::cerr);
}
