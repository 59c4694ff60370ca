#include "sgdmds/cli.hpp"

int main(int argc, char** argv) { return sgdmds::cli::run(argc, argv); }
