#include "cyclerank/cli.hpp"

int main(int argc, char** argv) { return cyclerank::cli::main_entry(argc, argv); }
