#include "hypergon/cli.hpp"

int main(int argc, char** argv) { return hypergon::cli::run(argc, argv); }
