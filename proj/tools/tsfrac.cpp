#include "tsfrac/cli.hpp"

int main(int argc, char** argv) { return tsfrac::cli::main(argc, argv); }
