#include "qdf/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return qdf::run_cli(argc, argv, std::cout, std::cerr);
}
