#include "foodbank/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return foodbank::run_cli(args, std::cout, std::cerr);
}
