#include "fri/cli.hpp"

int main(int argc, char** argv) { return fri::cli::run(argc, argv); }
