#include "taco/cli_io.hpp"

int main(int argc, char** argv) { return taco::cli_main(argc, argv); }
