#include "frostlab/runner/runner.hpp"

int main(int argc, char** argv) { return frostlab::runner::main_entry(argc, argv); }
