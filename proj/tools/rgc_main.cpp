#include <iostream>
#include <string>
#include <vector>

#include "rgc/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv, argv + argc);
    return rgc::run_cli(args, std::cout, std::cerr);
}
