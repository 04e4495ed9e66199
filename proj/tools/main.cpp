#include <iostream>

#include "phicong/cli.hpp"

int main(int argc, char** argv)
{
    return phicong::cli::run(argc, argv, std::cout, std::cerr);
}
