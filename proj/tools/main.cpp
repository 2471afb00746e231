#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return acoustic_pulse::cli::run(argc, argv, std::cout, std::cerr); }
