#include "cli.hpp"

int main(int argc, char** argv) { return bdq::cli::main_entry(argc, argv); }
