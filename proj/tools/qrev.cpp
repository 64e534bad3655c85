#include "qrev/cli.hpp"

int main(int argc, char **argv) { return qrev::cli::main_entry(argc, argv); }
