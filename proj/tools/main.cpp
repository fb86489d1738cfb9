#include "diracstep/cli.hpp"

#include <cstdio>
#include <iostream>
#include <unistd.h>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return diracstep::run_cli(args, std::cout, std::cerr, ::isatty(::fileno(stdout)) != 0);
}
