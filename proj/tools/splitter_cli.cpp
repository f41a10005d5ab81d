#include "splitter/cli.hpp"

int main(int argc, char** argv) { return splitter::runCli(argc, argv); }
