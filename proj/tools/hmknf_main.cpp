#include <iostream>

#include "hmknf/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return hmknf::run_cli(args, std::cin, std::cout, std::cerr);
}
