#include "pottslab/cli.hpp"

int main(int argc, char** argv) { return pottslab::cli_main(argc, argv); }
