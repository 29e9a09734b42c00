#include <legendre_hgf/cli.hpp>

#include <iostream>

int main(int argc, char** argv) {
    return legendre_hgf::cli::run(argc, argv, std::cout, std::cerr);
}
