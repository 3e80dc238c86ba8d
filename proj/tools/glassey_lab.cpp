#include "glassey/cli/cli.hpp"

int main(int argc, char** argv) { return glassey::cli::run(argc, argv); }
