#include "charlaw/cli.hpp"

int main(int argc, char** argv) { return charlaw::cli::run(argc, argv); }
