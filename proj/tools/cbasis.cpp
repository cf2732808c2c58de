#include "cbasis/cli.hpp"

int main(int argc, char** argv) { return cbasis::cli::main_entry(argc, argv); }
