#include "airy/cli.hpp"

int main(int argc, char** argv) { return airy::cli::main(argc, argv); }
