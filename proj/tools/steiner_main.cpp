#include <iostream>
#include <vector>

#include "steiner/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return steiner::run_command(args, std::cout, std::cerr);
}
