#include "mecm/app.hpp"

#include <iostream>

int
main(int argc, char** argv)
{
    return mecm::RunCli(argc, argv, std::cout, std::cerr);
}
