#include "mirrorjac/cli.hpp"

int main(int argc, char** argv) { return mirrorjac::cli::main_entry(argc, argv); }
