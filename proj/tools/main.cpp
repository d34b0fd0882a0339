#include <iostream>

#include "sag_cli.hpp"

int main(int argc, char** argv)
{
	return sag::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
