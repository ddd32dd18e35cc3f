#include <iostream>
#include <string>
#include <vector>

#include "assocmem/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return assocmem::cli::dispatch(args, std::cout, std::cerr);
}
