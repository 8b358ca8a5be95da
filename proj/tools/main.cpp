#include "sigstar/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return sigstar::cli::run(argc, argv, std::cout, std::cerr);
}
