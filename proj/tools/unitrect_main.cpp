#include <iostream>
#include <string>
#include <vector>

#include "unitrect/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return unitrect::run_cli(std::move(args), std::cout, std::cerr);
}
